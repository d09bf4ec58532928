import sys

from dynagrid.cli import main

sys.exit(main())
