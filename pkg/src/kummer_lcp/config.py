"""Resource budgets shared across the package.

Every exhaustive step checks its size against one of these limits and raises
``BudgetError`` instead of running away.  Values may be overridden at runtime
(the CLI does so from ``--budget`` / ``--config``).
"""

TABLE_BUDGET = 2**22          # largest field order that gets exp/log/Zech tables
ENUMERATION_BUDGET = 2**24    # field elements or places enumerated in one pass
DISTANCE_BUDGET = 2**24       # codewords visited by exact minimum distance
MDS_SUBSET_BUDGET = 10**7     # k-subsets examined by the MDS check
RANK_BUDGET = 4000            # largest matrix dimension handled by the kernels


def update(**kwargs):
    g = globals()
    for key, value in kwargs.items():
        name = key.upper()
        if name not in g or name.startswith("_") or not name.endswith("BUDGET"):
            raise KeyError(f"unknown budget {key!r}")
        g[name] = int(value)


def snapshot():
    return {k: v for k, v in globals().items() if k.endswith("BUDGET")}
