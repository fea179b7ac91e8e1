import sys

from birdyn.cli import main

sys.exit(main())
