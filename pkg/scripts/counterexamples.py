"""Print the failing containments for the maximal-parabolic statements in A2 and B2.

For each failure the witness is decoded back to wedge monomials in the
Chevalley basis and re-verified in isolation.
"""

from liewedge.chevalley import algebra
from liewedge.parabolic import build_parabolic
from liewedge.verify import (
    decode_vector,
    recheck,
    verify_invariant_subspaces,
    verify_pau2,
)


def show(L, vec):
    labels = L.basis_labels
    parts = []
    for key, c in sorted(vec.items()):
        parts.append(f"{c} " + " ^ ".join(labels[i] for i in key))
    return " + ".join(parts)


def main():
    for T in "AB":
        L = algebra(T, 2)
        for beta in (1, 2):
            d = build_parabolic(L, [3 - beta]).d
            for k in range(1, d + 1):
                reports = verify_invariant_subspaces(T, 2, beta, k)[2:] + verify_pau2(T, 2, beta, k)
                for r in reports:
                    if r.outcome != "fail":
                        continue
                    doc = r.to_json()
                    w = doc["witness"]
                    where = doc["params"].get("module", "")
                    print(f"{T}2 beta={beta} k={k} {r.statement} {where}")
                    print(f"    claims failing: {r.dims.get('failed_claims', r.dims)}")
                    if "vector" in w:
                        print(f"    witness: {show(L, decode_vector(w['vector']))}")
                    print(f"    re-verified: {recheck(doc)}")


if __name__ == "__main__":
    main()
