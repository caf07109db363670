# Some rules have closed forms: row n can be written down without the n-1 rows before it.
# Compare the work of simulating against the work of predicting.

from cirlab import evolve
from cirlab.predictors import predict_with_work, registered_rules

print("rules with a registered shortcut:", registered_rules())

for rule in (90, 158):
    for n in (64, 256, 1024):
        row, direct_work = predict_with_work(rule, n)
        trace = evolve(rule, "1", n)
        assert row == trace.final
        print(f"rule {rule:3d} n={n:5d}  simulate {trace.applications:8d}  predict {direct_work:5d}")

# rule 30 has none
try:
    predict_with_work(30, 10)
except Exception as e:
    print("rule 30:", type(e).__name__, e)
