import sys

from zbmeta.cli import main

sys.exit(main())
