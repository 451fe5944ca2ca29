import sys

from polyabc.cli import main

sys.exit(main())
