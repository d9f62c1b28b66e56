import sys

from homcalc.cli import main

sys.exit(main())
