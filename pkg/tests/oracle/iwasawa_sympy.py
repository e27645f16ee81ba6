"""Independent reference numbers for the Iwasawa coframe dphi3 = -phi1^phi2.

Builds the 64-dimensional complexified Chevalley-Eilenberg algebra from
scratch with sympy (no bicohom imports), splits d by bidegree and computes
every dimension from ranks and null spaces.  Run once; the output is frozen
into tests/golden/iwasawa_oracle.json.

    python3 tests/oracle/iwasawa_sympy.py > tests/golden/iwasawa_oracle.json
"""

import json
from itertools import combinations

from sympy import zeros
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

M = 3                      # generators 0..2 are phi, 3..5 are phibar
N = 2 * M
# d of each generator as {(a, b): coefficient} with a < b
DGEN = {2: {(0, 1): -1}, 5: {(3, 4): -1}}


def wedge_sign(word):
    """Sign of the permutation sorting ``word``; None on a repeated letter."""
    if len(set(word)) < len(word):
        return None
    inv = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    return -1 if inv % 2 else 1


def d_mono(mono):
    out = {}
    for pos, g in enumerate(mono):
        for (a, b), c in DGEN.get(g, {}).items():
            word = mono[:pos] + (a, b) + mono[pos + 1:]
            s = wedge_sign(word)
            if s is None:
                continue
            key = tuple(sorted(word))
            out[key] = out.get(key, 0) + c * s * (-1) ** pos
    return out


def bideg(mono):
    p = sum(1 for g in mono if g < M)
    return p, len(mono) - p


BASIS = {(p, q): [] for p in range(M + 1) for q in range(M + 1)}
for k in range(N + 1):
    for mono in combinations(range(N), k):
        BASIS[bideg(mono)].append(mono)


def block(src, tgt):
    rows = BASIS.get(tgt, [])
    cols = BASIS.get(src, [])
    A = zeros(len(rows), len(cols))
    idx = {m: i for i, m in enumerate(rows)}
    for j, mono in enumerate(cols):
        for m2, c in d_mono(mono).items():
            if m2 in idx:
                A[idx[m2], j] += c
    return A


def rank(A):
    if A.rows == 0 or A.cols == 0:
        return 0
    return DomainMatrix.from_Matrix(A).convert_to(QQ_I).rank()


def dim(p, q):
    return len(BASIS.get((p, q), []))


def D(p, q):
    return block((p, q), (p + 1, q))


def Db(p, q):
    return block((p, q), (p, q + 1))


def nullity(A, ncols):
    return ncols - rank(A)


def hstack(*mats):
    rows = mats[0].rows
    out = zeros(rows, 0)
    for m in mats:
        out = out.row_join(m)
    return out


def vstack(ncols, *mats):
    out = zeros(0, ncols)
    for m in mats:
        out = out.col_join(m)
    return out


def all_tables():
    res = {"b": [], "dolbeault": {}, "conj_dolbeault": {}, "bott_chern": {}, "aeppli": {}, "E2": {}}
    # total complex, blocks ordered by p
    tot = {}
    for k in range(N + 2):
        tot[k] = [(p, k - p) for p in range(M + 1) if 0 <= k - p <= M]
    for k in range(N + 1):
        src, tgt = tot[k], tot.get(k + 1, [])
        A = zeros(sum(dim(*x) for x in tgt), sum(dim(*x) for x in src))
        r0 = 0
        roff = {}
        for t in tgt:
            roff[t] = r0
            r0 += dim(*t)
        c0 = 0
        for s in src:
            for t, mat in (((s[0] + 1, s[1]), D(*s)), ((s[0], s[1] + 1), Db(*s))):
                if t in roff:
                    A[roff[t]:roff[t] + mat.rows, c0:c0 + mat.cols] = mat
            c0 += dim(*s)
        tot[("d", k)] = A
    for k in range(N + 1):
        n = sum(dim(*x) for x in tot[k])
        prev = rank(tot[("d", k - 1)]) if k > 0 else 0
        res["b"].append(n - rank(tot[("d", k)]) - prev)
    for p in range(M + 1):
        for q in range(M + 1):
            n = dim(p, q)
            key = f"{p},{q}"
            res["dolbeault"][key] = n - rank(Db(p, q)) - (rank(Db(p, q - 1)) if q > 0 else 0)
            res["conj_dolbeault"][key] = n - rank(D(p, q)) - (rank(D(p - 1, q)) if p > 0 else 0)
            ddb_in = D(p - 1, q) * Db(p - 1, q - 1) if p > 0 and q > 0 else zeros(n, 0)
            res["bott_chern"][key] = nullity(vstack(n, D(p, q), Db(p, q)), n) - rank(ddb_in)
            ddb_out = D(p, q + 1) * Db(p, q)
            im_sum = hstack(D(p - 1, q) if p > 0 else zeros(n, 0), Db(p, q - 1) if q > 0 else zeros(n, 0))
            res["aeppli"][key] = nullity(ddb_out, n) - rank(im_sum)
            # E2 = Z2 / B2
            m_y = dim(p + 1, q - 1) if q > 0 else 0
            Dby = Db(p + 1, q - 1) if q > 0 and p < M else zeros(dim(p + 1, q), m_y)
            top = hstack(Db(p, q), zeros(dim(p, q + 1), m_y))
            bottom = hstack(D(p, q), Dby)
            z2 = nullity(vstack(n + m_y, top, bottom), n + m_y) - nullity(Dby, m_y)
            parts = [Db(p, q - 1) if q > 0 else zeros(n, 0)]
            if p > 0:
                K = Db(p - 1, q).nullspace()
                if K:
                    parts.append(D(p - 1, q) * hstack(*K))
            b2 = rank(hstack(*parts))
            res["E2"][key] = z2 - b2
    return res


if __name__ == "__main__":
    print(json.dumps(all_tables(), indent=2, sort_keys=True))
