"""Figure rendering for collective-transport CSV/JSON outputs."""
from .figures import (FIGURES, DataFormatError, load_scaling, load_steady,
                      load_sweep, render)

__version__ = "0.1.0"
__all__ = ["FIGURES", "DataFormatError", "load_scaling", "load_steady",
           "load_sweep", "render"]
