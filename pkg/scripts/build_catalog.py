"""Regenerate src/twistlab/data/fixtures.json.

Hand-derived identities are listed literally below; the braid, commutation,
homology and rank families are enumerated from the crosscap intervals.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from twistlab.surface import Linking, build_model, linked

OUT = Path(__file__).resolve().parents[1] / "src" / "twistlab" / "data" / "fixtures.json"

PSZ = "two-crosscap relations of the mapping class group of N_{3,1}"
K3_LET = [
    ["a1", "T(1,2)"],
    ["a2", "T(2,3)"],
    ["u2", "U"],
    ["u1", "a2^-1*a1^-1*u2^-1*a1*a2"],
    ["e", "a2*u2^-1*a1*u2*a2^-1"],
    ["v", "e*u1"],
]
A3 = "CONJ(T(5,6), T(2,5)^-1*U*T(1,6)*U*T(3,6)*T(1,2)^-1*T(2,5)*U)"
K6_LET = [["v", "T(1,6)*U"], ["ta3", A3]]


def eq(fid, k, lhs, rhs, provenance, let=None):
    item = {"id": fid, "kind": "equal", "k": k, "lhs": lhs, "rhs": rhs, "provenance": provenance}
    if let:
        item["let"] = let
    return item


def twist(i, j):
    return f"T({i},{j})"


def build() -> dict:
    fx = []
    for k in range(3, 7):
        iv = build_model(k).two_sided_intervals()
        for a, b in itertools.combinations(iv, 2):
            ta, tb = twist(*a), twist(*b)
            kind = linked(a, b)
            if kind is Linking.ONCE_LINKED:
                fx.append(eq(f"R-braid-N{k}-{ta}|{tb}", k, f"{ta}*{tb}*{ta}", f"{tb}*{ta}*{tb}",
                             "curves meeting once: braid relation"))
            elif kind is Linking.DISJOINTABLE:
                fx.append(eq(f"R-commute-N{k}-{ta}|{tb}", k, f"{ta}*{tb}", f"{tb}*{ta}",
                             "disjoint curves: twists commute"))
            elif kind is Linking.NESTED:
                fx.append(eq(f"R-nested-N{k}-{ta}|{tb}", k, f"{ta}*{tb}", f"{tb}*{ta}",
                             "nested intervals give disjoint curves: twists commute"))

    psz = [
        ("a2*a1*a2", "a1*a2*a1", "braid of the two chain twists"),
        ("u2*u1*u2", "u1*u2*u1", "braid of the two transpositions"),
        ("u2*u1*a2", "a1*u2*u1", "transpositions carry a2 to a1"),
        ("a2*u1*u2", "u1*u2*a1", "u1 u2 carries a1 to a2"),
        ("u2*a2*u2^-1", "a2^-1", "u2 inverts the twist a2"),
        ("u2*a1*a2*u1", "a1*a2", "mixed twist and transposition relation"),
    ]
    for n, (lhs, rhs, label) in enumerate(psz, start=1):
        fx.append(eq(f"R-PSz-{n}", 3, lhs, rhs, f"{PSZ}: {label}", K3_LET))
    fx.append(eq("R-u1-inverts-a1", 3, "u1*a1*u1^-1", "a1^-1",
                 f"{PSZ}: u1 inverts the twist a1", K3_LET))
    e_prov = "e is the twist about the image of a1 under t_{a2} u2^-1"
    fx.append(eq("R-e-1", 3, "e", "a2*a1*a2*u1*u2", e_prov, K3_LET))
    fx.append(eq("R-e-2", 3, "e", "CONJ(a1, a2*u2^-1)", e_prov, K3_LET))
    fx.append(eq("R-e-3", 3, "e", "a2*u2^-1*a1*a2*u2", e_prov + " (after u2 inverts a2)", K3_LET))
    v_prov = "v = e u1 inverts both chain twists and squares to the boundary twist"
    fx.append(eq("R-vsq-odd-1", 3, "v*a1*v^-1", "a1^-1", v_prov, K3_LET))
    fx.append(eq("R-vsq-odd-2", 3, "v*a2*v^-1", "a2^-1", v_prov, K3_LET))
    fx.append(eq("R-vsq-odd-3", 3, "v^2", "(u1*u2*u1)^2", v_prov, K3_LET))
    fx.append(eq("R-vsq-odd-4", 3, "v^2", "D", v_prov + "; D is conjugation by the boundary word", K3_LET))
    fx.append(eq("R-vsq-odd-5", 3, "v", "a2*a1*a2*u1*u2*u1", v_prov, K3_LET))

    chain_prov = "3-chain relation: (t1 t2 t3)^4 is the product of the two boundary twists"
    fx.append(eq("R-chain-3-N4", 4, "(T(1,2)*T(2,3)*T(3,4))^4",
                 "T(1,4)*CONJ(T(1,4), U*T(2,3)^-1*U^-1*T(2,3)*U)", chain_prov))
    for k in (5, 6):
        fx.append(eq(f"R-chain-3-N{k}", k, "(T(1,2)*T(2,3)*T(3,4))^4",
                     "T(1,4)*CONJ(T(1,2), T(4,5)^-1*T(3,4)^-1*T(2,5)*T(2,3)^-1)", chain_prov))
    fx.append(eq("R-chain-3-N6-commute", 6, "(T(1,2)*T(2,3)*T(3,4))^4*T(5,6)",
                 "T(5,6)*(T(1,2)*T(2,3)*T(3,4))^4", chain_prov + "; commutes with disjoint twists"))

    fx.append(eq("R-D6", 6,
                 "(T(5,6)*T(1,4)*T(4,5)*T(3,4)*T(2,3)*T(1,2))^5*(T(5,6)*T(4,5)*T(3,4)*T(2,3)*T(1,2))^-6",
                 "T(1,6)",
                 "D6 relation: chain c0..c5 = c56, c14, c45, c34, c23, c12 bounds a pair of pants with c16"))

    even_prov = "v = t_a u with a = c_{1,6} squares to t_{a1} t_{a3}"
    fx.append(eq("R-vsq-even-1", 6, "v^2", "T(1,4)*ta3", even_prov, K6_LET))
    fx.append(eq("R-vsq-even-2", 6, "ta3*T(1,6)", "T(1,6)*ta3", even_prov + "; t_{a3} commutes with t_a", K6_LET))
    s_pres = [
        ("T(5,6)*T(1,6)", "T(1,6)*T(5,6)"),
        ("v*T(5,6)", "T(5,6)^-1*v"),
        ("v^2*T(1,6)", "T(1,6)*v^2"),
        ("T(1,4)*v", "v*T(1,4)"),
        ("T(1,4)*T(5,6)", "T(5,6)*T(1,4)"),
        ("T(1,4)*T(1,6)", "T(1,6)*T(1,4)"),
    ]
    for n, (lhs, rhs) in enumerate(s_pres, start=1):
        fx.append(eq(f"R-S-pres-{n}", 6, lhs, rhs,
                     f"presentation of the subgroup generated by t_a0, t_a, t_a1, v: relation {n}", K6_LET))

    tri_prov = "nonorientable triangle in N_{4,1}: a = c12, b = c23, c = U(c23)"
    tri_let = [["ta", "T(1,2)"], ["tb", "T(2,3)"], ["tc", "CONJ(T(2,3), U)"]]
    fx.append(eq("R-triangle-1", 4, "ta*tb*ta", "tb*ta*tb", tri_prov, tri_let))
    fx.append(eq("R-triangle-2", 4, "ta*tc*ta", "tc*ta*tc", tri_prov, tri_let))
    fx.append(eq("R-triangle-3", 4, "tc^-1*tb*tc^-1", "tb*tc^-1*tb", tri_prov, tri_let))

    for k in range(3, 7):
        for i, j in build_model(k).two_sided_intervals():
            for m in (2, 3, 5):
                fx.append({
                    "id": f"R-gamma-N{k}-{twist(i, j)}-mod{m}", "kind": "gamma", "k": k,
                    "twist": twist(i, j), "modulus": m,
                    "provenance": "twist powers act trivially on double-cover homology mod m",
                })

    for k in range(3, 7):
        iv = build_model(k).two_sided_intervals()
        fams = [
            F for r in range(1, len(iv) + 1) for F in itertools.combinations(iv, r)
            if all(linked(a, b) is Linking.DISJOINTABLE for a, b in itertools.combinations(F, 2))
        ]
        maximal = [F for F in fams if not any(set(F) < set(G) for G in fams)]
        for F in maximal:
            fx.append(rank_fixture(k, F))
    fx.append(rank_fixture(6, ((1, 2), (3, 4), (5, 6), (1, 4), (1, 6)), "R-rank-nested"))

    return {"version": 1, "fixtures": fx}


def render() -> str:
    return json.dumps(build(), indent=1) + "\n"


def main() -> None:
    OUT.write_text(render())
    print(f"wrote {len(build()['fixtures'])} fixtures to {OUT}")


# Frozen before implementing the rank computation: a family of twists about
# pairwise disjoint, pairwise non-homologous curves should give independent
# transvections, so the expected value is the family size.
def rank_fixture(k, family, prefix="R-rank"):
    names = [twist(*c) for c in family]
    return {
        "id": f"{prefix}-N{k}-" + "|".join(names), "kind": "rank", "k": k,
        "family": names, "expected_rank": len(names),
        "provenance": "twists about disjoint curves generate a free abelian group; homology rank is a lower bound",
    }


if __name__ == "__main__":
    main()
