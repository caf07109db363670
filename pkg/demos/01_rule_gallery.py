# Evolve a few rules from a single black cell and print them.
# 90 draws the Sierpinski triangle, 30 looks random, 110 grows gliders to the left.

from cirlab import evolve
from cirlab.render import grid, to_ascii

for rule in (90, 30, 110, 158):
    trace = evolve(rule, "1", 24)
    print(f"rule {rule}: {trace.applications} rule applications for 24 rows")
    print(to_ascii(grid(trace)))
    print()

# the same row as text: anchor, then cells
print(evolve(30, "1", 5).final.to_text())
