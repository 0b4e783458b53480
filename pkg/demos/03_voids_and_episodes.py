"""
Information voids and overabundance
===================================

The weekly delta is supply minus demand on the shared 0-100 scale.  Weeks
strictly above the average supply are overabundant (plenty written, little
asked); runs strictly below the negative average demand are information
voids (much asked, little written).
"""

import datetime as dt

from infodelta import NormalizedSeries, delta, detect_episodes, thresholds

weeks = tuple(dt.date(2023, 1, 2) + dt.timedelta(weeks=i) for i in range(12))

# Demand surges in the middle of the window while supply stays flat,
# then supply overshoots near the end.
supply = NormalizedSeries("ztl", "facebook", weeks, (30, 32, 28, 30, 25, 22, 25, 30, 85, 90, 80, 30))
demand = NormalizedSeries("ztl", "trends", weeks, (20, 25, 30, 75, 95, 100, 90, 40, 20, 15, 20, 25))

d = delta(supply, demand)
th = thresholds(supply, demand)

print("delta:", d.values)
print(f"thresholds: overabundance above {th.upper:.2f}, void below {th.lower:.2f}")
print()

for episode in detect_episodes(d, th):
    span = f"{episode.start_week.isoformat()} .. {episode.end_week.isoformat()}"
    print(
        f"{episode.kind:>14}  {span}  peak {episode.peak_value:>4}  "
        f"mean {episode.mean_value:.1f}"
    )

# min_len drops one-week blips when only persistent runs matter.
persistent = detect_episodes(d, th, min_len=2)
print(f"\nepisodes of two weeks or more: {len(persistent)}")
