#!/usr/bin/env python3
"""Generate the FCIDUMP fixtures shipped under fixtures/.

Self-contained STO-3G integrals (McMurchie-Davidson, s and p shells),
RHF/ROHF, and a dense determinant FCI used to freeze reference energies.
Requires numpy + scipy only.  Outputs are committed; rerunning must be
byte-identical.

Usage: python3 generate_fixtures.py [outdir]
"""
import json
import os
import sys
from itertools import combinations

import numpy as np
from scipy.special import hyp1f1

BOHR = 0.52917721092  # Angstrom per bohr

# STO-3G exponents / contraction coefficients (EMSL tabulation).
STO3G = {
    "H": [("s", [3.425250914, 0.6239137298, 0.1688554040],
           [0.1543289673, 0.5353281423, 0.4446345422])],
    "Li": [("s", [16.11957475, 2.936200663, 0.794650487],
            [0.1543289673, 0.5353281423, 0.4446345422]),
           ("sp", [0.6362897469, 0.1478600533, 0.0480886784],
            ([-0.09996722919, 0.3995128261, 0.7001154689],
             [0.1559162750, 0.6076837186, 0.3919573931]))],
    "Be": [("s", [30.16787069, 5.495115306, 1.487192653],
            [0.1543289673, 0.5353281423, 0.4446345422]),
           ("sp", [1.314833110, 0.3055389383, 0.0993707456],
            ([-0.09996722919, 0.3995128261, 0.7001154689],
             [0.1559162750, 0.6076837186, 0.3919573931]))],
    "O": [("s", [130.7093214, 23.80886605, 6.443608313],
           [0.1543289673, 0.5353281423, 0.4446345422]),
          ("sp", [5.033151319, 1.169596125, 0.3803889600],
           ([-0.09996722919, 0.3995128261, 0.7001154689],
            [0.1559162750, 0.6076837186, 0.3919573931]))],
    "F": [("s", [166.6791340, 30.36081233, 8.216820672],
           [0.1543289673, 0.5353281423, 0.4446345422]),
          ("sp", [6.464803249, 1.502281245, 0.4885884864],
           ([-0.09996722919, 0.3995128261, 0.7001154689],
            [0.1559162750, 0.6076837186, 0.3919573931]))],
}
CHARGES = {"H": 1, "Li": 3, "Be": 4, "O": 8, "F": 9}


def boys(m, x):
    return hyp1f1(m + 0.5, m + 1.5, -x) / (2.0 * m + 1.0)


def hermite_E(i, j, t, Qx, a, b):
    """Hermite expansion coefficient E_t^{ij} (1D), K factor included."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * Qx * Qx)
    if j == 0:
        return (hermite_E(i - 1, j, t - 1, Qx, a, b) / (2 * p)
                - q * Qx / a * hermite_E(i - 1, j, t, Qx, a, b)
                + (t + 1) * hermite_E(i - 1, j, t + 1, Qx, a, b))
    return (hermite_E(i, j - 1, t - 1, Qx, a, b) / (2 * p)
            + q * Qx / b * hermite_E(i, j - 1, t, Qx, a, b)
            + (t + 1) * hermite_E(i, j - 1, t + 1, Qx, a, b))


def overlap_prim(a, lmn1, A, b, lmn2, B):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    S1 = hermite_E(l1, l2, 0, A[0] - B[0], a, b)
    S2 = hermite_E(m1, m2, 0, A[1] - B[1], a, b)
    S3 = hermite_E(n1, n2, 0, A[2] - B[2], a, b)
    return S1 * S2 * S3 * (np.pi / p) ** 1.5


def kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = -2 * b * b * (overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
                          + overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
                          + overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B))
    term2 = -0.5 * (l2 * (l2 - 1) * overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
                    + m2 * (m2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
                    + n2 * (n2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B))
    return term0 + term1 + term2


def hermite_R(t, u, v, n, p, PC):
    x, y, z = PC
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * (x * x + y * y + z * z))
    if t > 0:
        return ((t - 1) * hermite_R(t - 2, u, v, n + 1, p, PC)
                + x * hermite_R(t - 1, u, v, n + 1, p, PC))
    if u > 0:
        return ((u - 1) * hermite_R(t, u - 2, v, n + 1, p, PC)
                + y * hermite_R(t, u - 1, v, n + 1, p, PC))
    return ((v - 1) * hermite_R(t, u, v - 2, n + 1, p, PC)
            + z * hermite_R(t, u, v - 1, n + 1, p, PC))


def nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    P = (a * A + b * B) / p
    val = 0.0
    for t in range(l1 + l2 + 1):
        Ex = hermite_E(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            Ey = hermite_E(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                Ez = hermite_E(n1, n2, v, A[2] - B[2], a, b)
                val += Ex * Ey * Ez * hermite_R(t, u, v, 0, p, P - C)
    return val * 2.0 * np.pi / p


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    val = 0.0
    for t in range(l1 + l2 + 1):
        E1 = hermite_E(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            E2 = hermite_E(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                E3 = hermite_E(n1, n2, v, A[2] - B[2], a, b)
                for tau in range(l3 + l4 + 1):
                    E4 = hermite_E(l3, l4, tau, C[0] - D[0], c, d)
                    for nu in range(m3 + m4 + 1):
                        E5 = hermite_E(m3, m4, nu, C[1] - D[1], c, d)
                        for ph in range(n3 + n4 + 1):
                            E6 = hermite_E(n3, n4, ph, C[2] - D[2], c, d)
                            val += (E1 * E2 * E3 * E4 * E5 * E6
                                    * (-1.0) ** (tau + nu + ph)
                                    * hermite_R(t + tau, u + nu, v + ph, 0,
                                                alpha, P - Q))
    return val * 2.0 * np.pi ** 2.5 / (p * q * np.sqrt(p + q))


class BasisFunction:
    def __init__(self, center, lmn, exps, coefs):
        self.center = np.asarray(center, dtype=float)
        self.lmn = lmn
        self.exps = list(exps)
        l = sum(lmn)
        norm_prims = [(2.0 * a / np.pi) ** 0.75 * np.sqrt((4.0 * a) ** l)
                      for a in exps]
        self.coefs = [c * n for c, n in zip(coefs, norm_prims)]
        s = 0.0
        for a, ca in zip(self.exps, self.coefs):
            for b, cb in zip(self.exps, self.coefs):
                s += ca * cb * overlap_prim(a, lmn, self.center, b, lmn, self.center)
        self.coefs = [c / np.sqrt(s) for c in self.coefs]


def build_basis(atoms):
    basis = []
    for sym, xyz in atoms:
        for shell in STO3G[sym]:
            kind, exps, coefs = shell
            if kind == "s":
                basis.append(BasisFunction(xyz, (0, 0, 0), exps, coefs))
            else:
                cs, cp = coefs
                basis.append(BasisFunction(xyz, (0, 0, 0), exps, cs))
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    basis.append(BasisFunction(xyz, lmn, exps, cp))
    return basis


def contracted(fn, prim_fn, ga, gb, *extra):
    val = 0.0
    for a, ca in zip(ga.exps, ga.coefs):
        for b, cb in zip(gb.exps, gb.coefs):
            val += ca * cb * prim_fn(a, ga.lmn, ga.center, b, gb.lmn, gb.center, *extra)
    return val


def integrals(atoms):
    basis = build_basis(atoms)
    nb = len(basis)
    S = np.zeros((nb, nb))
    T = np.zeros((nb, nb))
    V = np.zeros((nb, nb))
    for i in range(nb):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contracted(None, overlap_prim, basis[i], basis[j])
            T[i, j] = T[j, i] = contracted(None, kinetic_prim, basis[i], basis[j])
            v = 0.0
            for sym, xyz in atoms:
                v -= CHARGES[sym] * contracted(None, nuclear_prim, basis[i],
                                               basis[j], np.asarray(xyz))
            V[i, j] = V[j, i] = v
    ERI = np.zeros((nb, nb, nb, nb))
    for i in range(nb):
        for j in range(i + 1):
            for k in range(nb):
                for l in range(k + 1):
                    if (i * (i + 1) // 2 + j) < (k * (k + 1) // 2 + l):
                        continue
                    val = 0.0
                    for a, ca in zip(basis[i].exps, basis[i].coefs):
                        for b, cb in zip(basis[j].exps, basis[j].coefs):
                            for c, cc in zip(basis[k].exps, basis[k].coefs):
                                for d, cd in zip(basis[l].exps, basis[l].coefs):
                                    val += ca * cb * cc * cd * eri_prim(
                                        a, basis[i].lmn, basis[i].center,
                                        b, basis[j].lmn, basis[j].center,
                                        c, basis[k].lmn, basis[k].center,
                                        d, basis[l].lmn, basis[l].center)
                    for (p, q, r, s) in {(i, j, k, l), (j, i, k, l), (i, j, l, k),
                                         (j, i, l, k), (k, l, i, j), (l, k, i, j),
                                         (k, l, j, i), (l, k, j, i)}:
                        ERI[p, q, r, s] = val
    enuc = 0.0
    for x in range(len(atoms)):
        for y in range(x + 1, len(atoms)):
            rxy = np.linalg.norm(np.asarray(atoms[x][1]) - np.asarray(atoms[y][1]))
            enuc += CHARGES[atoms[x][0]] * CHARGES[atoms[y][0]] / rxy
    return S, T + V, ERI, enuc


def rhf(S, Hcore, ERI, nelec, enuc, maxiter=200, tol=1e-10, damp=0.5):
    nocc = nelec // 2
    w, U = np.linalg.eigh(S)
    X = U @ np.diag(w ** -0.5) @ U.T
    F = Hcore.copy()
    D = None
    Eold = 0.0
    E = 0.0
    for it in range(maxiter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :nocc]
        Dnew = 2.0 * Cocc @ Cocc.T
        D = Dnew if D is None else damp * Dnew + (1 - damp) * D
        J = np.einsum("pqrs,rs->pq", ERI, D)
        K = np.einsum("prqs,rs->pq", ERI, D)
        F = Hcore + J - 0.5 * K
        E = 0.5 * np.sum(D * (Hcore + F)) + enuc
        if abs(E - Eold) < tol and it > 1:
            return E, C, eps
        Eold = E
    raise RuntimeError("RHF not converged")


def rohf(S, Hcore, ERI, na, nb, enuc, maxiter=500, tol=1e-10, damp=0.5):
    w, U = np.linalg.eigh(S)
    X = U @ np.diag(w ** -0.5) @ U.T
    Da = np.zeros_like(S)
    Db = np.zeros_like(S)
    Eold = 0.0
    C = eps = None
    for it in range(maxiter):
        J = np.einsum("pqrs,rs->pq", ERI, Da + Db)
        Ka = np.einsum("prqs,rs->pq", ERI, Da)
        Kb = np.einsum("prqs,rs->pq", ERI, Db)
        Fa = Hcore + J - Ka
        Fb = Hcore + J - Kb
        E = (0.5 * np.sum((Da + Db) * Hcore) + 0.5 * np.sum(Da * Fa)
             + 0.5 * np.sum(Db * Fb) + enuc)
        Feff = 0.5 * (Fa + Fb)
        Fp = X.T @ Feff @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Dan = C[:, :na] @ C[:, :na].T
        Dbn = C[:, :nb] @ C[:, :nb].T
        Da = damp * Dan + (1 - damp) * Da
        Db = damp * Dbn + (1 - damp) * Db
        if abs(E - Eold) < tol and it > 5:
            return E, C, eps
        Eold = E
    raise RuntimeError("ROHF not converged")


def mo_transform(Hcore, ERI, C):
    h = C.T @ Hcore @ C
    eri = np.einsum("pi,qj,pqrs,rk,sl->ijkl", C, C, ERI, C, C, optimize=True)
    return h, eri


# Determinant FCI, spin orbitals interleaved (alpha = even, beta = odd).

def dets(nso, nelec, ms2):
    na = (nelec + ms2) // 2
    nb = (nelec - ms2) // 2
    out = []
    for occa in combinations(range(0, nso, 2), na):
        for occb in combinations(range(1, nso, 2), nb):
            mask = 0
            for o in occa + occb:
                mask |= 1 << o
            out.append(mask)
    return sorted(out)


def fci_ground(h, eri, nso, nelec, ms2, ecore):
    def so_h(P, Q):
        return h[P // 2, Q // 2] if (P % 2) == (Q % 2) else 0.0

    def so_v(P, Q, R, S):  # <PQ|RS> physicists
        if (P % 2) != (R % 2) or (Q % 2) != (S % 2):
            return 0.0
        return eri[P // 2, R // 2, Q // 2, S // 2]

    def occ_list(mask):
        return [i for i in range(nso) if (mask >> i) & 1]

    basis = dets(nso, nelec, ms2)
    n = len(basis)
    H = np.zeros((n, n))
    for ii, ket in enumerate(basis):
        for jj in range(ii, n):
            bra = basis[jj]
            diff = bra ^ ket
            nd = bin(diff).count("1")
            if nd > 4:
                continue
            if nd == 0:
                occ = occ_list(ket)
                val = ecore + sum(so_h(P, P) for P in occ)
                for x, P in enumerate(occ):
                    for Q in occ[x + 1:]:
                        val += so_v(P, Q, P, Q) - so_v(P, Q, Q, P)
            elif nd == 2:
                p = occ_list(diff & ket)[0]
                q = occ_list(diff & bra)[0]
                lo, hi = min(p, q), max(p, q)
                sign = (-1) ** bin(ket & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))).count("1")
                val = so_h(q, p)
                for R in occ_list(ket & bra):
                    val += so_v(q, R, p, R) - so_v(q, R, R, p)
                val *= sign
            else:
                p1, p2 = occ_list(diff & ket)
                q1, q2 = occ_list(diff & bra)
                sign = 1
                m = ket
                for p in (p2, p1):
                    sign *= (-1) ** bin(m & ((1 << p) - 1)).count("1")
                    m &= ~(1 << p)
                for q in (q1, q2):
                    sign *= (-1) ** bin(m & ((1 << q) - 1)).count("1")
                    m |= 1 << q
                val = sign * (so_v(q1, q2, p1, p2) - so_v(q1, q2, p2, p1))
            H[ii, jj] = H[jj, ii] = val
    wvals = np.linalg.eigvalsh(H)
    return wvals[0]


def freeze_core(h, eri, ecore, nfrozen):
    ec = ecore
    for i in range(nfrozen):
        ec += 2.0 * h[i, i]
        for j in range(nfrozen):
            ec += 2.0 * eri[i, i, j, j] - eri[i, j, j, i]
    nmo = h.shape[0]
    act = list(range(nfrozen, nmo))
    heff = np.zeros((len(act), len(act)))
    for a, p in enumerate(act):
        for b, q in enumerate(act):
            v = h[p, q]
            for i in range(nfrozen):
                v += 2.0 * eri[p, q, i, i] - eri[p, i, i, q]
            heff[a, b] = v
    erieff = eri[np.ix_(act, act, act, act)]
    return heff, erieff, ec


def write_fcidump(path, h, eri, ecore, nelec, ms2, eps):
    nmo = h.shape[0]
    lines = [f"&FCI NORB={nmo},NELEC={nelec},MS2={ms2},",
             " ORBSYM=" + "1," * nmo,
             " ISYM=1,",
             "&END"]

    def fmt(v, i, j, k, l):
        return f"{v: .16E} {i:3d} {j:3d} {k:3d} {l:3d}"

    for p in range(nmo):
        for q in range(p + 1):
            pq = p * (p + 1) // 2 + q
            for r in range(p + 1):
                for s in range(r + 1):
                    rs = r * (r + 1) // 2 + s
                    if rs > pq:
                        continue
                    v = eri[p, q, r, s]
                    if abs(v) > 1e-12:
                        lines.append(fmt(v, p + 1, q + 1, r + 1, s + 1))
    for p in range(nmo):
        for q in range(p + 1):
            if abs(h[p, q]) > 1e-12:
                lines.append(fmt(h[p, q], p + 1, q + 1, 0, 0))
    for p in range(nmo):
        lines.append(fmt(eps[p], p + 1, 0, 0, 0))
    lines.append(fmt(ecore, 0, 0, 0, 0))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def hchain_atoms(n, r_ang, axis="z"):
    return [("H", np.array([0.0, 0.0, i * r_ang / BOHR])) for i in range(n)]


SYSTEMS = []

for r in [0.7414]:
    SYSTEMS.append((f"h2/{r:.4f}A", hchain_atoms(2, r), 2, 0, 0))
for r in [1.5]:
    SYSTEMS.append((f"h3/{r:.4f}A", hchain_atoms(3, r), 3, 1, 0))
for r in [1.5, 1.75, 2.0]:
    SYSTEMS.append((f"h3plus/{r:.4f}A", hchain_atoms(3, r), 2, 0, 0))
for r in [1.5]:
    SYSTEMS.append((f"h4/{r:.4f}A", hchain_atoms(4, r), 4, 0, 0))

for r in [1.2, 1.595, 2.0, 2.5]:
    SYSTEMS.append((f"lih/{r:.4f}A",
                    [("Li", np.zeros(3)), ("H", np.array([0.0, 0.0, r / BOHR]))],
                    4, 0, 1))
for r in [0.917, 1.1]:
    SYSTEMS.append((f"hf/{r:.4f}A",
                    [("F", np.zeros(3)), ("H", np.array([0.0, 0.0, r / BOHR]))],
                    10, 0, 1))
# H2O: C2v, experimental equilibrium r(OH) = 0.9572 A, angle 104.52 deg.
for r, theta in [(0.9572, 104.52)]:
    th = np.deg2rad(theta) / 2.0
    rb = r / BOHR
    SYSTEMS.append((f"h2o/{r:.4f}A",
                    [("O", np.zeros(3)),
                     ("H", np.array([rb * np.sin(th), 0.0, rb * np.cos(th)])),
                     ("H", np.array([-rb * np.sin(th), 0.0, rb * np.cos(th)]))],
                    10, 0, 1))
# BeH2: bent C2v structure on the Be + H2 insertion pathway.
for r, theta in [(1.3340, 110.0)]:
    th = np.deg2rad(theta) / 2.0
    rb = r / BOHR
    SYSTEMS.append((f"beh2/{r:.4f}A-{theta:.0f}deg",
                    [("Be", np.zeros(3)),
                     ("H", np.array([rb * np.sin(th), 0.0, rb * np.cos(th)])),
                     ("H", np.array([-rb * np.sin(th), 0.0, rb * np.cos(th)]))],
                    6, 0, 1))


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    refs = {}
    for name, atoms, nelec, ms2, nfrozen in SYSTEMS:
        S, Hcore, ERI, enuc = integrals(atoms)
        if ms2 == 0:
            E_scf, C, eps = rhf(S, Hcore, ERI, nelec, enuc)
        else:
            na = (nelec + ms2) // 2
            nb = (nelec - ms2) // 2
            E_scf, C, eps = rohf(S, Hcore, ERI, na, nb, enuc)
        h, eri = mo_transform(Hcore, ERI, C)
        nmo = h.shape[0]
        path = os.path.join(outdir, name + ".fcidump")
        os.makedirs(os.path.dirname(path), exist_ok=True)
        write_fcidump(path, h, eri, enuc, nelec, ms2, eps)
        entry = {"e_scf": E_scf, "e_nuc": enuc, "n_orb": nmo}
        if nmo <= 7 and nfrozen == 0:
            entry["e_fci"] = fci_ground(h, eri, 2 * nmo, nelec, ms2, enuc)
        if nfrozen > 0:
            heff, erieff, ec = freeze_core(h, eri, enuc, nfrozen)
            entry["e_fci_frozen"] = fci_ground(heff, erieff,
                                               2 * (nmo - nfrozen),
                                               nelec - 2 * nfrozen, ms2, ec)
            entry["n_frozen"] = nfrozen
        refs[name] = entry
        print(name, json.dumps(entry))
    with open(os.path.join(outdir, "reference_energies.json"), "w") as f:
        json.dump(refs, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
