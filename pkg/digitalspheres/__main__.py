import sys

from digitalspheres.cli import main


sys.exit(main())
