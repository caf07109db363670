# Sort all 256 rules by how simulation work grows and whether a shortcut is known.

from collections import Counter

from cirlab.harness import classify, sweep

for rule in (0, 4, 2, 90, 158, 30, 110):
    label, ev = classify(rule, 512)
    print(f"rule {rule:3d} {label:16s} work exponent {ev.sim_work_fit:.2f} predictor {ev.predictor_found}")

results = sweep(range(256), 512)
print(Counter(label for _, label, _ in results))
print("no known shortcut:", [r for r, label, _ in results if label == "Class4Candidate"])
