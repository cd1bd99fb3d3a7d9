"""Independent enumeration of {a + b*sqrt(2) : |x| <= 100, |a - b*sqrt(2)| <= 5}."""
import math
import sys
from decimal import Decimal, getcontext

getcontext().prec = 60
SQRT2 = Decimal(2).sqrt()

d, lo, hi, radius = 2, -5.0, 5.0, 100.0
r = math.sqrt(d)
pts = []
bmax = int((radius + hi) / (2 * r)) + 2
for b in range(-bmax, bmax + 1):
    for a in range(-int(radius + hi) - 2, int(radius + hi) + 3):
        x, s = a + b * r, a - b * r
        if abs(x) <= radius and lo <= s <= hi:
            pts.append((a, b, x))
pts.sort()  # lexicographic on exact (a, b)
out = sys.stdout
out.write("# alat-pointset: 1\n# family: quad-line\n# ambient: line\n# d: 2\n")
out.write("# enumRadius: 100\n# coreRadius: 100\n# scheme: quad-line\n# window: -5,5\n")
out.write("# provenance.d: 2\n# provenance.family: quad-line\n# provenance.generator: enumerate\n")
out.write("# provenance.window: -5,5\n")
out.write("x.a,x.b,x\n")
for a, b, x in pts:
    out.write("%d,%d,%.17g\n" % (a, b, float(a + b * SQRT2)))
