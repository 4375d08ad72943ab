import sys

from svdefect.cli import main

sys.exit(main())
