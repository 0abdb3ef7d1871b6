import sys

from harptile.cli import main

sys.exit(main())
