# %% [markdown]
# # Counting k-tours three ways
#
# A k-tour is a closed walk whose visited vertices span a tree and which
# crosses every tree edge exactly k times in each direction. Their number on
# trees with n+1 vertices is the hypergraph Catalan number c_n^(k).
#
# This script computes the same numbers by exhaustive search, by summing over
# plane trees, by the degree-profile formula and by power series.

# %%
from hypercat import (
    brute_force_walks,
    catalan,
    hypergraph_catalan_closed,
    lagrange_extract,
    oracle_by_trees,
)
from hypercat.series import extract_counts

# %% [markdown]
# k = 1 is the classical contour walk, so we get the Catalan numbers back.

# %%
print([hypergraph_catalan_closed(n, 1) for n in range(10)])
print([catalan(n) for n in range(10)])

# %% [markdown]
# For small trees every route can be run, including brute force.

# %%
print(f"{'n':>2} {'k':>2} {'walks':>8} {'trees':>8} {'closed':>8} {'series':>8}")
for k in (1, 2, 3, 4):
    series_values = extract_counts(k, 8 // k)
    for n in range(1, 8 // k + 1):
        print(
            f"{n:>2} {k:>2} {brute_force_walks(n, k):>8} {oracle_by_trees(n, k):>8} "
            f"{hypergraph_catalan_closed(n, k):>8} {series_values[n]:>8}"
        )

# %% [markdown]
# The power series route scales much further than the profile sum.

# %%
value = lagrange_extract(200, 3)
print(f"c_200^(3) has {len(str(value))} digits")
