"""
Checking witnesses
==================

Generate congruence and factorization witnesses, verify them, perturb them
and write a witness file for the command line tool.
"""

import random
import tempfile
from pathlib import Path

from suslin import jsonio
from suslin.cli import main
from suslin.ring import Quadric
from suslin.witness import (
    ProductMismatch,
    factorization_check,
    power_row_section,
    random_congruence_instance,
    random_factorization_instance,
    verify_congruence_witness,
)

rng = random.Random(4)

# M = E^t N E up to stabilization by psi
M, N, i, E = random_congruence_instance(rng, "W_E")
print(M)
print(E.factors)
print(verify_congruence_witness(M, N, i, E, "W_E"))
print(verify_congruence_witness(M, N, i, E.with_cancelling_pair(0, 2, 5, 7), "W_E"))

# phi = lift(lam) eps_1 eps_2 s with s fixing the target
inst = random_factorization_instance(rng, point_seed=4)
keys = ("phi", "lam", "eps", "s", "target")
print(factorization_check(*(inst[k] for k in keys)))
try:
    factorization_check(inst["phi"], inst["lam"], inst["eps"][:1], inst["s"], inst["target"])
except ProductMismatch as exc:
    print("dropped factor:", exc)

# a power row with its explicit section
v = power_row_section(4, 6)
S7 = Quadric(4)
print(v.a[0], "|", v.section[0])
print(sum((a * b for a, b in zip(v.a, v.section)), S7.zero))

# the same witnesses through the command line
with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "witness.json"
    path.write_text(jsonio.dumps([
        jsonio.congruence_witness_to_json(M, N, i, E, "W_E"),
        jsonio.factorization_to_json(*(inst[k] for k in keys)),
    ]))
    print("exit code:", main(["orbit-witness", "verify", str(path), "--format", "text"]))
