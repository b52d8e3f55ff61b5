import os

LOG_LEVEL = os.getenv("MUTFAN_LOG_LEVEL", "WARNING")

# Default search depths by rank.
DEPTH_SMALL_RANK = int(os.getenv("MUTFAN_DEPTH_SMALL_RANK", "8"))
DEPTH_MEDIUM_RANK = int(os.getenv("MUTFAN_DEPTH_MEDIUM_RANK", "5"))
DEPTH_LARGE_RANK = int(os.getenv("MUTFAN_DEPTH_LARGE_RANK", "3"))

SYMMETRIZER_BOUND = int(os.getenv("MUTFAN_SYMMETRIZER_BOUND", "1000000"))
MATRIX_CACHE_SIZE = int(os.getenv("MUTFAN_MATRIX_CACHE_SIZE", "4096"))
DISORDER_MAX_SUPPORT = int(os.getenv("MUTFAN_DISORDER_MAX_SUPPORT", "12"))

PLOT_DIR = os.getenv("MUTFAN_PLOT_DIR", "./plots")
DEFAULT_SEED = int(os.getenv("MUTFAN_SEED", "0"))


def default_depth(rank):
    """Returns the default mutation search depth for a matrix of the given rank."""
    if rank <= 3:
        return DEPTH_SMALL_RANK
    if rank <= 6:
        return DEPTH_MEDIUM_RANK
    return DEPTH_LARGE_RANK
