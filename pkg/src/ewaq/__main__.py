import sys

from ewaq.cli import main

sys.exit(main())
