import sys
from pathlib import Path

# Make sure the package imports from the checkout without being installed
REPO_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(REPO_ROOT))
