"""Regenerates geodesic_reference.tsv with Karney's algorithm (geographiclib).

Run: python3 make_geodesic_reference.py > ../geodesic_reference.tsv
"""
import random

from geographiclib.geodesic import Geodesic

rng = random.Random(20180829)
print("lat1\tlon1\tlat2\tlon2\tdistance_m")
for _ in range(50):
    lat1, lat2 = rng.uniform(24.5, 49.4), rng.uniform(24.5, 49.4)
    lon1, lon2 = rng.uniform(-124.8, -66.9), rng.uniform(-124.8, -66.9)
    s12 = Geodesic.WGS84.Inverse(lat1, lon1, lat2, lon2)["s12"]
    print(f"{lat1!r}\t{lon1!r}\t{lat2!r}\t{lon2!r}\t{s12!r}")
