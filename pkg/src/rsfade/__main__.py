import sys

from rsfade.harness.cli import main

sys.exit(main())
