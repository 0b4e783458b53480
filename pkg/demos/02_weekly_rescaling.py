"""
From raw weekly counts to the 0-100 scale
=========================================

Supply series (post or article counts) are rescaled so the busiest week
of the window reads 100, matching the scale search-interest exports
already use.  Demand passes through untouched.
"""

import datetime as dt

from infodelta import RawSeries, demand_passthrough, rescale

weeks = tuple(dt.date(2023, 1, 2) + dt.timedelta(weeks=i) for i in range(8))

# Eight weeks of post counts with a clear spike in week 4.
posts = RawSeries("heat_pumps", "facebook", weeks, (12, 18, 9, 44, 31, 7, 0, 22))
supply = rescale(posts)

# A search-interest export is already 0-100; it only gets validated.
trends = RawSeries("heat_pumps", "trends", weeks, (35, 40, 28, 100, 77, 30, 12, 51))
demand = demand_passthrough(trends)

print(f"{'week':>10}  {'posts':>5}  {'supply':>6}  {'demand':>6}")
for week, raw, s, d in zip(weeks, posts.values, supply.values, demand.values):
    print(f"{week.isoformat():>10}  {raw:>5}  {s:>6}  {d:>6}")

# Rounding is half-up on the exact rational 100*v/peak, so the mapping is
# order-preserving and invariant under scaling the raw counts:
doubled = RawSeries("heat_pumps", "facebook", weeks, tuple(2 * v for v in posts.values))
assert rescale(doubled).values == supply.values
print("\nscaling all counts by 2 leaves the rescaled series unchanged")

# An all-zero series cannot define a peak; it comes back flagged.
silent = rescale(RawSeries("heat_pumps", "instagram", weeks, (0,) * 8))
print("all-zero week counts -> degenerate flag:", silent.degenerate)
