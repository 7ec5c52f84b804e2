#!/usr/bin/env python3
"""Regenerate the JSON fixture corpus under fixtures/.

Matrix groups are turned into permutation groups by their action on vectors
or projective points over small finite fields. Every group is closed by brute
force here so the recorded orders are checked independently of the C++ code.

    python3 tools/make_fixtures.py [--out fixtures]
"""

import argparse
import itertools
import json
from pathlib import Path


# ---------------------------------------------------------------------------
# Finite fields GF(p^k), elements encoded as integers 0..q-1 (base-p digits
# are polynomial coefficients).


class GF:
    def __init__(self, p, k, modulus):
        # modulus: coefficients c_0..c_{k-1} of x^k = -(c_0 + ... )
        self.p, self.k, self.q = p, k, p ** k
        self.mod = modulus
        self._mul = [[self._mul_slow(a, b) for b in range(self.q)] for a in range(self.q)]
        self._add = [[self._add_slow(a, b) for b in range(self.q)] for a in range(self.q)]
        self.neg = [next(b for b in range(self.q) if self._add[a][b] == 0) for a in range(self.q)]
        self.inv = [None] + [next(b for b in range(self.q) if self._mul[a][b] == 1) for a in range(1, self.q)]

    def digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def undigits(self, d):
        return sum((c % self.p) * self.p ** i for i, c in enumerate(d))

    def _add_slow(self, a, b):
        return self.undigits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def _mul_slow(self, a, b):
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        for deg in range(len(prod) - 1, self.k - 1, -1):
            c = prod[deg]
            prod[deg] = 0
            for i, m in enumerate(self.mod):
                prod[deg - self.k + i] -= c * m
        return self.undigits(prod[: self.k])

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def pow(self, a, n):
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def sub(self, a, b):
        return self.add(a, self.neg[b])


def mat_mul(F, A, B):
    n = len(A)
    return tuple(
        tuple(
            _sum(F, (F.mul(A[i][t], B[t][j]) for t in range(n)))
            for j in range(n)
        )
        for i in range(n)
    )


def _sum(F, it):
    s = 0
    for x in it:
        s = F.add(s, x)
    return s


def mat_vec(F, A, v):
    return tuple(_sum(F, (F.mul(A[i][t], v[t]) for t in range(len(v)))) for i in range(len(A)))


def det3(F, A):
    terms = []
    for perm, sign in [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                       ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]:
        t = 1
        for i in range(3):
            t = F.mul(t, A[i][perm[i]])
        terms.append(t if sign == 1 else F.neg[t])
    return _sum(F, terms)


def normalize_projective(F, v):
    for x in v:
        if x:
            s = F.inv[x]
            return tuple(F.mul(s, y) for y in v)
    raise ValueError("zero vector")


# ---------------------------------------------------------------------------
# Permutation helpers (images arrays, apply left factor first).


def compose(a, b):
    return tuple(b[i] for i in a)


def inverse(a):
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def closure(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def element_order(a):
    n, seen, order = len(a), [False] * len(a), 1
    from math import gcd
    for i in range(n):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                length += 1
            order = order * length // gcd(order, length)
    return order


def conj_class_size(gens, x):
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for g in gens:
                z = compose(compose(inverse(g), y), g)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return len(seen)


def from_cycles(n, cycles):
    img = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return tuple(img)


# ---------------------------------------------------------------------------
# Groups.


def matrix_action(F, mats, points, act):
    index = {pt: i for i, pt in enumerate(points)}
    gens = []
    for M in mats:
        gens.append(tuple(index[act(M, pt)] for pt in points))
    return gens


def gl2_3():
    F = GF(3, 1, [0])
    pts = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]

    def act(M, v):
        return mat_vec(F, M, v)

    # Generators of GL2(3): [[1,1],[0,1]] and [[0,1],[2,0]] and diag(2,1).
    mats = [((1, 1), (0, 1)), ((0, 1), (2, 0)), ((2, 0), (0, 1))]
    gens = matrix_action(F, mats, pts, act)
    # Dihedral subgroup generated by R = [[0,2],[1,0]] (order 4), S = diag(1,2).
    d8 = matrix_action(F, [((0, 2), (1, 0)), ((1, 0), (0, 2))], pts, act)
    return gens, d8


def sl3_2():
    F = GF(2, 1, [0])
    pts = [v for v in itertools.product(range(2), repeat=3) if v != (0, 0, 0)]

    def act(M, v):
        return mat_vec(F, M, v)

    mats = [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0))]
    return matrix_action(F, mats, pts, act)


def su3(q):
    if q == 3:
        F = GF(3, 2, [1, 0])          # x^2 = -1
    elif q == 4:
        F = GF(2, 4, [1, 1, 0, 0])    # x^4 = x + 1
    else:
        raise ValueError(q)

    def bar(a):
        return F.pow(a, q)

    def form(x, y):
        # Hermitian form with antidiagonal Gram matrix.
        return _sum(F, [F.mul(x[0], bar(y[2])), F.mul(x[1], bar(y[1])), F.mul(x[2], bar(y[0]))])

    pts = set()
    for v in itertools.product(range(F.q), repeat=3):
        if any(v) and form(v, v) == 0:
            pts.add(normalize_projective(F, v))
    pts = sorted(pts)
    assert len(pts) == q ** 3 + 1

    # Primitive element of GF(q^2).
    prim = next(t for t in range(2, F.q) if len({F.pow(t, i) for i in range(1, F.q)}) == F.q - 1)
    t = prim
    torus = ((t, 0, 0), (0, F.pow(t, q - 1), 0), (0, 0, F.inv[F.pow(t, q)]))
    w = ((0, 0, 1), (0, F.neg[1], 0), (1, 0, 0))
    # Unipotent element u(a, b) with b + b^q + a^(q+1) = 0.
    unip = None
    for a in range(1, F.q):
        for b in range(F.q):
            if _sum(F, [b, bar(b), F.pow(a, q + 1)]) == 0:
                unip = ((1, a, b), (0, 1, F.neg[bar(a)]), (0, 0, 1))
                break
        if unip:
            break
    mats = [torus, w, unip]
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for M in mats:
        assert det3(F, M) == 1
        cols = [tuple(M[i][j] for i in range(3)) for j in range(3)]
        for i in range(3):
            for j in range(3):
                assert form(cols[i], cols[j]) == form(basis[i], basis[j])

    def act(M, v):
        return normalize_projective(F, mat_vec(F, M, v))

    return matrix_action(F, mats, pts, act)


def quaternion():
    # Regular representation of Q8 = {±1, ±i, ±j, ±k}; index = 2*unit + sign.
    units = ["1", "i", "j", "k"]
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}

    def right_mul(g):
        out = []
        for s, u in elems:
            sign, w = table[(u, g)]
            out.append(index[(s * sign, w)])
        return tuple(out)

    return [right_mul("i"), right_mul("j")]


def sylow3_normalizer(gens):
    elems = closure(gens)
    threes = [x for x in elems if element_order(x) == 3]
    x = min(threes)
    for y in sorted(threes):
        if compose(x, y) == compose(y, x) and y not in (x, compose(x, x)):
            break
    sub = closure([x, y])
    assert len(sub) == 9
    norm = [g for g in elems if {compose(compose(inverse(g), s), g) for s in sub} == sub]
    assert len(norm) == 144
    # Greedy small generating set.
    chosen = []
    current = {tuple(range(len(x)))}
    for g in sorted(norm):
        if g not in current:
            chosen.append(g)
            current = closure(chosen)
            if len(current) == 144:
                break
    return chosen


def cls(label, order, size, value, **extra):
    entry = {"label": label, "order": order, "size": size, "value": value}
    entry.update(extra)
    return entry


def char_doc(group, name, classes, citation=None):
    doc = {"schema": "eulercert.character/v1", "group": group, "name": name, "classes": classes}
    if citation:
        doc["citation"] = citation
    return doc


def write_characters(out):
    d = out / "characters"
    d.mkdir(parents=True, exist_ok=True)
    atlas = "ATLAS of Finite Groups character table (partial, values on the listed classes only)"
    docs = {
        "u3_3_chi2": char_doc("U3(3)", "chi2", [
            cls("1A", 1, 1, 6), cls("2A", 2, 63, -2), cls("3A", 3, 56, -3), cls("3B", 3, 672, 0)], atlas),
        # The four classes of size 208 form one rational class; the value is shared.
        "u3_4_chi": char_doc("U3(4)", "chi", [
            cls("1A", 1, 1, 12), cls("2A", 2, 195, -4), cls("5A", 5, 208, -3, rational=True)], atlas),
        "gl2_3_chi2": char_doc("GL2(3)", "chi2", [
            cls("1A", 1, 1, 1), cls("2A", 2, 1, 1), cls("2B", 2, 12, -1), cls("3A", 3, 8, 1),
            cls("4A", 4, 6, 1), cls("6A", 6, 8, 1), cls("8A", 8, 6, -1, rational=True)]),
        "gl2_3_2chi2_chi8": char_doc("GL2(3)", "2chi2+chi8", [
            cls("1A", 1, 1, 6), cls("2A", 2, 1, -2), cls("2B", 2, 12, -2), cls("3A", 3, 8, 3),
            cls("4A", 4, 6, 2), cls("6A", 6, 8, 1), cls("8A", 8, 6, -2, rational=True)]),
        "gl2_3_partial": char_doc("GL2(3)", "2chi2+chi8 (involutions only)", [
            cls("1A", 1, 1, 6), cls("2A", 2, 1, -2), cls("2B", 2, 12, -2)]),
        "s4_nu": char_doc("S4", "nu", [
            cls("1A", 1, 1, 3), cls("2A", 2, 3, -1), cls("2B", 2, 6, -1), cls("3A", 3, 8, 0), cls("4A", 4, 6, 1)]),
        "s4_2nu": char_doc("S4", "2nu", [
            cls("1A", 1, 1, 6), cls("2A", 2, 3, -2), cls("2B", 2, 6, -2), cls("3A", 3, 8, 0), cls("4A", 4, 6, 2)]),
        "s4_missing": char_doc("S4", "nu (involutions only)", [
            cls("1A", 1, 1, 3), cls("2A", 2, 3, -1), cls("2B", 2, 6, -1)]),
        "s4_trivial": char_doc("S4", "trivial", [
            cls("1A", 1, 1, 1), cls("2A", 2, 3, 1), cls("2B", 2, 6, 1), cls("3A", 3, 8, 1), cls("4A", 4, 6, 1)]),
    }
    for key, doc in docs.items():
        (d / f"{key}.json").write_text(json.dumps(doc, indent=1) + "\n")


def write_amalgams(out, d8_gens, d8_in_gl2):
    d = out / "amalgams"
    d.mkdir(parents=True, exist_ok=True)
    two_local = {
        "schema": "eulercert.graph_of_groups/v1",
        "name": "GL2(3) *_D8 S4",
        "vertices": [
            {"group": "../groups/gl2_3.json", "character": "../characters/gl2_3_2chi2_chi8.json"},
            {"group": "../groups/s4.json", "character": "../characters/s4_2nu.json"},
        ],
        "edges": [{
            "group": "../groups/d8.json",
            "ends": [
                {"vertex": 0, "images": [list(g) for g in d8_in_gl2]},
                {"vertex": 1, "images": [list(g) for g in d8_gens]},
            ],
        }],
        "target": {"name": "M11", "prime": 2, "group": "../groups/m11.json"},
        "equivalence": "GL2(3) *_D8 S4 -> M11 is a mod-2 cohomology equivalence "
                       "(centralizer of an involution amalgamated with the normalizer of a Klein four-group)",
    }
    three_local = {
        "schema": "eulercert.graph_of_groups/v1",
        "name": "N_M11(Syl3)",
        "vertices": [{"group": "../groups/m11_n3.json", "character": {"construct": "normal_sylow", "prime": 3}}],
        "edges": [],
        "target": {"name": "M11", "prime": 3, "group": "../groups/m11.json"},
        "equivalence": "Swan: the Sylow 3-subgroup of M11 is abelian, so its normalizer "
                       "(order 144) controls mod-3 cohomology",
    }
    broken = dict(two_local)
    broken["name"] = "disconnected"
    broken["edges"] = []
    collapsing = json.loads(json.dumps(two_local))
    collapsing["name"] = "collapsing edge map"
    r, s = d8_gens
    collapsing["edges"][0]["ends"][1]["images"] = [list(compose(r, r)), list(s)]
    for key, doc in (("m11_2local", two_local), ("m11_3local", three_local),
                     ("disconnected", broken), ("collapsing", collapsing)):
        (d / f"{key}.json").write_text(json.dumps(doc, indent=1) + "\n")


# ---------------------------------------------------------------------------


def group_doc(name, gens, note=None):
    doc = {"schema": "eulercert.group/v1", "name": name, "degree": len(gens[0]),
           "generators": [list(g) for g in gens]}
    if note:
        doc["note"] = note
    return doc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    (out / "groups").mkdir(parents=True, exist_ok=True)

    gl2, d8_in_gl2 = gl2_3()
    m11 = [from_cycles(11, [list(range(11))]), from_cycles(11, [[2, 6, 10, 7], [3, 9, 4, 5]])]
    groups = {
        "s4": ("S4", [from_cycles(4, [[0, 1, 2, 3]]), from_cycles(4, [[0, 1]])], 24, None),
        "a4": ("A4", [from_cycles(4, [[0, 1, 2]]), from_cycles(4, [[0, 1], [2, 3]])], 12, None),
        "a5": ("A5", [from_cycles(5, [[0, 1, 2, 3, 4]]), from_cycles(5, [[0, 1, 2]])], 60, None),
        "s3": ("S3", [from_cycles(3, [[0, 1, 2]]), from_cycles(3, [[0, 1]])], 6, None),
        "d8": ("D8", [from_cycles(4, [[0, 1, 2, 3]]), from_cycles(4, [[0, 2]])], 8, None),
        "q8": ("Q8", quaternion(), 8, "right regular representation"),
        "z3": ("Z3", [from_cycles(3, [[0, 1, 2]])], 3, None),
        "z6": ("Z6", [from_cycles(5, [[0, 1, 2], [3, 4]])], 6, None),
        "z2x2": ("Z2^2", [from_cycles(4, [[0, 1]]), from_cycles(4, [[2, 3]])], 4, None),
        "z2x3": ("Z2^3", [from_cycles(6, [[0, 1]]), from_cycles(6, [[2, 3]]), from_cycles(6, [[4, 5]])], 8, None),
        "z3x2": ("Z3^2", [from_cycles(6, [[0, 1, 2]]), from_cycles(6, [[3, 4, 5]])], 9, None),
        "sl3_2": ("SL3(2)", sl3_2(), 168, "action on the 7 nonzero vectors of F_2^3"),
        "gl2_3": ("GL2(3)", gl2, 48, "action on the 8 nonzero vectors of F_3^2"),
        "u3_3": ("U3(3)", su3(3), 6048, "SU3(3) on the 28 isotropic points of a Hermitian form"),
        "u3_4": ("U3(4)", su3(4), 62400, "SU3(4) on the 65 isotropic points of a Hermitian form"),
        "m11": ("M11", m11, 7920, None),
    }
    elems = {}
    for key, (name, gens, order, note) in groups.items():
        g = closure(gens)
        assert len(g) == order, (name, len(g))
        elems[key] = g
        (out / "groups" / f"{key}.json").write_text(json.dumps(group_doc(name, gens, note)) + "\n")
        print(f"{name}: order {len(g)}")

    n144 = sylow3_normalizer(m11)
    (out / "groups" / "m11_n3.json").write_text(
        json.dumps(group_doc("N_M11(Syl3)", n144, "normalizer of a Sylow 3-subgroup of M11")) + "\n")

    # Edge group of the 2-local amalgam: D8 on 4 points, with its images in GL2(3) and S4.
    (out / "groups" / "d8_edge.json").write_text(json.dumps(group_doc("D8", groups["d8"][1])) + "\n")

    write_characters(out)
    write_amalgams(out, groups["d8"][1], d8_in_gl2)

    # Class sizes used by the ingested character files.
    for key, orders in (("u3_3", (2, 3)), ("u3_4", (2, 5))):
        gens = groups[key][1]
        sizes = {}
        for x in elems[key]:
            o = element_order(x)
            if o in orders:
                sizes.setdefault(o, set())
        for o in orders:
            found = {}
            for x in sorted(elems[key]):
                if element_order(x) != o:
                    continue
                if any(x in members for members in found.values()):
                    continue
                members = set()
                frontier = [x]
                members.add(x)
                while frontier:
                    nxt = []
                    for y in frontier:
                        for g in gens:
                            z = compose(compose(inverse(g), y), g)
                            if z not in members:
                                members.add(z)
                                nxt.append(z)
                    frontier = nxt
                found[x] = members
            print(key, "order", o, "class sizes", sorted(len(m) for m in found.values()))


if __name__ == "__main__":
    main()
