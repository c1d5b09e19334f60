import sys

from dtsim.main import main

sys.exit(main())
