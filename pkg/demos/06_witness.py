# A machine that writes every row in order can be watched row by row.
# A machine that jumps straight to the answer skips the intermediate rows, so the check fails.

from cirlab.harness import ApproximationWitness, daughter_cost, identity_extractor, verify_witness
from cirlab.tm import build_eca_machine_2tape, build_rule158_direct_machine

for name, machine in (("simulator", build_eca_machine_2tape(158)), ("shortcut", build_rule158_direct_machine())):
    w = ApproximationWitness(machine, identity_extractor(), lambda i: 1)
    v = verify_witness(w, 158, 16)
    print(f"{name:9s} holds={v.holds} steps={v.machine_steps} {v.reason or ''}")

# cheap extraction keeps the daughter machine as fast as its parent, linear extraction does not
N = 10**4
tm = [n * n for n in range(1, N + 1)]
print("F=5   ratio", daughter_cost(tm, [5] * N)[-1] / tm[-1])
print("F(i)=i ratio", daughter_cost(tm, list(range(1, N + 1)))[-1] / tm[-1])
