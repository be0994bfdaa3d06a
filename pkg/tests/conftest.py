import sys
from pathlib import Path

# Lets test modules import the transcribed printed tables next to them.
sys.path.insert(0, str(Path(__file__).parent))
