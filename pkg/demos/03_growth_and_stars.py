# %% [markdown]
# # Growth rates and star-like trees
#
# The exact values are compared with the leading-order growth formula. For
# k >= 3 nearly all tours live on the star (one hub of degree n).

# %%
from fractions import Fraction

from hypercat import StarParams, ratio_report, star_count_exact, star_sum_k2_check
from hypercat.series import lagrange_extract

# %%
for k in (1, 2, 3, 4):
    rep = ratio_report(k, [25, 50, 100, 200])
    cells = "  ".join(f"n={r.n}: {r.ratio:.6f}" for r in rep.rows)
    print(f"k={k}  {cells}")

# %% [markdown]
# Share of k=3 tours not on the star.

# %%
for n in (6, 10, 14, 18, 40):
    star = star_count_exact(StarParams(n, 0, 3))
    share = Fraction(lagrange_extract(n, 3) - star, lagrange_extract(n, 3))
    print(f"n={n:>3}  non-star share {float(share):.4f}")

# %% [markdown]
# For k = 2 the star alone is not enough: trees with a few degree-2 vertices
# add up to a factor e^(3/2).

# %%
for n in (20, 50, 100, 400):
    total, limit = star_sum_k2_check(n)
    print(f"n={n:>3}  sum/s_2(n,0) = {total:.5f}   e^1.5 = {limit:.5f}")
