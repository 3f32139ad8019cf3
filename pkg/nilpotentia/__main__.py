import sys

from nilpotentia.cli import main

sys.exit(main())
