"""
Finding every solution of x + y = 5
===================================

Six of the 64 pairs of 3-bit numbers add up to 5.  Two Grover iterations are
enough to concentrate almost all the probability on them.  Here we watch the
success probability rise and fall with the iteration count and compare it to
sin^2((2k+1) theta).
"""

from qdiophantine.analysis import optimal_iterations, predicted_success
from qdiophantine.grover import run_grover

k_auto = optimal_iterations(64, 6)
print("scheduled iterations:", k_auto)

###############################################################################
# Success probability per iteration count.  Note how k=6 lands close to k=1.

for k in range(8):
    r = run_grover(3, 5, k)
    bar = "#" * round(40 * r.success_probability)
    print(f"k={k}  simulated {r.success_probability:.6f}  formula {predicted_success(64, 6, k):.6f}  {bar}")

###############################################################################
# The most probable states after two iterations, read x0x1x2 y0y1y2.

r = run_grover(3, 5, k_auto)
print()
print("state   x  y  x+y  probability")
for s in sorted(r.solutions, key=lambda s: s.state):
    print(f"{s.state}  {s.x}  {s.y}  {s.x + s.y:>3}  {s.probability:.6f}")
rest = max(p for st, p in r.probabilities.items() if st not in {s.state for s in r.solutions})
print(f"largest non-solution probability: {rest:.2e}")
