"""Hot loops, compiled with numba unless ``FTORACLE_NO_JIT`` is set."""

# label of an unmarked vertex; every tree-edge rank is smaller
INF_RANK = 2**63 - 1
