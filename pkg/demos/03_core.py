"""The core of a module: intersection of sampled minimal reductions against
the closed form Fitt_l(E) * E, on every shipped example."""

from pdcore import build_rees, load_corpus
from pdcore.core import verify_integrally_closed, verify_theorem
from pdcore.inputs import CORPUS, powers_exponents

for name in CORPUS:
    E = load_corpus(name)
    RP = build_rees(E, seed=1)
    rep = verify_theorem(E, RP, seed=1)
    inv = rep.invariants
    flags = "".join(k if v else "-" for k, v in rep.flags.items())
    rs = sorted({s.r_value for s in rep.samples}, key=lambda r: (r is None, r))
    print(f"{name:16s} n={inv['n']} e={inv['e']} l={inv['ell']} pd={inv['proj_dim']}"
          f"  r in {rs}  flags {flags}  {rep.verdict}")
    if rep.witness:
        print(" " * 18, "element of Fitt_l(E) E missing from the core:",
              [str(a) for a in rep.witness["vector"]])
    if powers_exponents(E):
        print(" " * 18, "integrally closed check:", verify_integrally_closed(E, RP).status)
