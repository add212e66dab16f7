import sys

from powop.cli import main

sys.exit(main())
