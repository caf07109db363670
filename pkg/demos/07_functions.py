# The same enumerate-or-jump question for ordinary integer functions.

from cirlab.funcbench import FACTORIAL, NTH_PRIME, POW2, enumerate_f, logistic, iter_values, speedup_report

for f in (POW2, NTH_PRIME):
    rep = speedup_report(f, [2**k for k in range(6, 13)])
    print(rep["f"], "gap exponent", round(rep["gap_exponent"], 2))
    for r in rep["rows"]:
        print(f"  n={r.n:5d} enum={r.enum_work:9d} direct={r.direct_work:7d} speedup={r.speedup:.1f}")

print("12! =", enumerate_f(FACTORIAL, 12)[0])
print("logistic from 0.30:", [v for _, v, _ in iter_values(logistic(4, "0.3000"), 6)])
print("logistic from 0.75:", [v for _, v, _ in iter_values(logistic(4, "0.7500"), 6)])
