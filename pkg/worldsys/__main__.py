import sys

from worldsys.main import main

sys.exit(main())
