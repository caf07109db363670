# Turing machines that simulate an ECA, and the price of having only one tape.

import numpy as np

from cirlab.tm import (build_eca_machine_2tape, compile_to_single_tape, compiled_output, cost_model_2tape,
                       decode_machine_output, encode_input, palindrome_1tape, palindrome_2tape, run)

# the 2-tape machine reads n in binary, writes every row on its output tape
m = build_eca_machine_2tape(158)
mr = run(m, [encode_input(3, "1")])
print("rule 158, n=3:", [r.to_text() for r in decode_machine_output(mr)], f"in {mr.steps} steps")

for n in (16, 64, 256):
    steps = run(build_eca_machine_2tape(30), [encode_input(n, "1")]).steps
    print(f"n={n:4d} steps={steps:8d} steps/n^2={steps / n**2:.2f} steps/model={steps / cost_model_2tape(n):.2f}")

# palindromes: linear with two tapes, quadratic with one
ls = [2**k for k in range(4, 10)]
two = [run(palindrome_2tape(), ["1" * l]).steps for l in ls]
one = [run(palindrome_1tape(), ["1" * l]).steps for l in ls]
print("2-tape exponent", round(np.polyfit(np.log(ls), np.log(two), 1)[0], 2))
print("1-tape exponent", round(np.polyfit(np.log(ls), np.log(one), 1)[0], 2))

# any k-tape machine can be flattened onto one tape at a quadratic cost
src = palindrome_2tape()
comp = compile_to_single_tape(src)
for x in ("0110", "01101", "1100101"):
    a, b = run(src, [x]), run(comp, [x])
    print(f"{x:8s} src {a.output} in {a.steps:3d}  compiled {compiled_output(b, 2)} in {b.steps:5d}"
          f"  ratio/src^2 {b.steps / a.steps**2:.2f}")
