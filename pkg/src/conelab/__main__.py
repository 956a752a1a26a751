import sys

from conelab.cli import main

sys.exit(main())
