"""Language graph distillation: greedy multi-hop distillation for
low-resource translation directions, with a synthetic-world test bench."""

from lgd._core import *  # noqa: F401,F403
from lgd._core import __version__  # noqa: F401
