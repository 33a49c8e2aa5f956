import sys

from twistlab.cli import main

sys.exit(main())
