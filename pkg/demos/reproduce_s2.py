"""Rebuild the s = 2 list by bounded search and compare it with the shipped one.

Run: python3 demos/reproduce_s2.py [jobs]
"""
import sys
import time

from coxfano.dataio import load_list
from coxfano.enumeration import SearchBounds, SearchStats, enumerate_sporadic
from coxfano.isomorphy import canonical_form, diff

jobs = int(sys.argv[1]) if len(sys.argv) > 1 else 1
bounds = SearchBounds(max_coord=3, max_exp=6, max_total_deg=8)

for prune in (True, False):
    stats = SearchStats()
    t = time.perf_counter()
    forms = enumerate_sporadic(2, bounds, prune=prune, jobs=jobs, stats=stats)
    print(f"prune={prune}: {len(forms)} forms in {time.perf_counter() - t:.1f}s")
    print("  ", stats)

shipped = [canonical_form(e.data()) for e in load_list("s2")]
only_found, only_shipped, common = diff(forms, shipped)
print(f"{len(common)} in common, {len(only_found)} only found, {len(only_shipped)} only shipped")
