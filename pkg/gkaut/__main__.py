import sys

from gkaut.main import main

sys.exit(main())
