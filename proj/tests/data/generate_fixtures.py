#!/usr/bin/env python3
# Copyright 2026 The qsci-lab Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the FCIDUMP and doubles-amplitude fixtures in this directory.

Hydrogen chains in the STO-6G minimal basis: closed-form integrals over
contracted s-type Gaussians, a plain RHF loop, MO transformation, and the
standard FCIDUMP layout. Pure numpy; no quantum-chemistry package needed.
"""

import math

import numpy as np

# STO-6G hydrogen 1s (zeta = 1.24): exponents and contraction coefficients
# for normalized primitives.
STO6G_H = [
    (35.52322122, 0.00916359628),
    (6.513143725, 0.04936149294),
    (1.822142904, 0.16853830490),
    (0.625955266, 0.37056279970),
    (0.243076747, 0.41649152980),
    (0.100112428, 0.13033408410),
]

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903


def boys0(t):
    if t < 1e-12:
        return 1.0 - t / 3.0
    return 0.5 * math.sqrt(math.pi / t) * math.erf(math.sqrt(t))


class Basis:
    """Contracted s-Gaussians on given centers (one function per center)."""

    def __init__(self, centers):
        self.centers = [np.asarray(c, dtype=float) for c in centers]
        self.prims = []
        for center in self.centers:
            funcs = []
            for alpha, coef in STO6G_H:
                norm = (2.0 * alpha / math.pi) ** 0.75
                funcs.append((alpha, coef * norm))
            self.prims.append((center, funcs))

    def __len__(self):
        return len(self.prims)


def overlap_kinetic(basis):
    n = len(basis)
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    for i, (ci, fi) in enumerate(basis.prims):
        for j, (cj, fj) in enumerate(basis.prims):
            rij2 = float(np.dot(ci - cj, ci - cj))
            for a, da in fi:
                for b, db in fj:
                    p = a + b
                    mu = a * b / p
                    pref = da * db * (math.pi / p) ** 1.5 * math.exp(-mu * rij2)
                    s[i, j] += pref
                    t[i, j] += pref * mu * (3.0 - 2.0 * mu * rij2)
    return s, t


def nuclear(basis, charges):
    n = len(basis)
    v = np.zeros((n, n))
    for i, (ci, fi) in enumerate(basis.prims):
        for j, (cj, fj) in enumerate(basis.prims):
            rij2 = float(np.dot(ci - cj, ci - cj))
            for a, da in fi:
                for b, db in fj:
                    p = a + b
                    mu = a * b / p
                    center = (a * ci + b * cj) / p
                    pref = da * db * 2.0 * math.pi / p * math.exp(-mu * rij2)
                    for zc, cc in charges:
                        pc2 = float(np.dot(center - cc, center - cc))
                        v[i, j] -= zc * pref * boys0(p * pc2)
    return v


def two_electron(basis):
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    for i, (ci, fi) in enumerate(basis.prims):
        for j, (cj, fj) in enumerate(basis.prims):
            rij2 = float(np.dot(ci - cj, ci - cj))
            for k, (ck, fk) in enumerate(basis.prims):
                for l, (cl, fl) in enumerate(basis.prims):
                    rkl2 = float(np.dot(ck - cl, ck - cl))
                    val = 0.0
                    for a, da in fi:
                        for b, db in fj:
                            p = a + b
                            mu = a * b / p
                            cp = (a * ci + b * cj) / p
                            ab = da * db * math.exp(-mu * rij2)
                            for c, dc in fk:
                                for d, dd in fl:
                                    q = c + d
                                    nu = c * d / q
                                    cq = (c * ck + d * cl) / q
                                    cd = dc * dd * math.exp(-nu * rkl2)
                                    rho = p * q / (p + q)
                                    pq2 = float(np.dot(cp - cq, cp - cq))
                                    val += (
                                        ab
                                        * cd
                                        * 2.0
                                        * math.pi ** 2.5
                                        / (p * q * math.sqrt(p + q))
                                        * boys0(rho * pq2)
                                    )
                    eri[i, j, k, l] = val
    return eri


def rhf(s, hcore, eri, n_occ, e_nuc, max_iter=200, tol=1e-12):
    # Symmetric orthogonalization, plain Roothaan iterations with damping.
    evals, evecs = np.linalg.eigh(s)
    x = evecs @ np.diag(evals ** -0.5) @ evecs.T
    dm = np.zeros_like(s)
    fock = hcore.copy()
    energy = 0.0
    for it in range(max_iter):
        fmo = x.T @ fock @ x
        _, cmo = np.linalg.eigh(fmo)
        c = x @ cmo
        dm_new = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
        dm = dm_new if it < 2 else 0.7 * dm_new + 0.3 * dm
        j = np.einsum("pqrs,rs->pq", eri, dm)
        k = np.einsum("prqs,rs->pq", eri, dm)
        fock = hcore + j - 0.5 * k
        e_new = 0.5 * np.sum(dm * (hcore + fock)) + e_nuc
        if abs(e_new - energy) < tol and it > 3:
            energy = e_new
            break
        energy = e_new
    fmo = x.T @ fock @ x
    eps, cmo = np.linalg.eigh(fmo)
    c = x @ cmo
    # Fix MO signs: largest-magnitude coefficient positive.
    for p in range(c.shape[1]):
        idx = np.argmax(np.abs(c[:, p]))
        if c[idx, p] < 0:
            c[:, p] *= -1
    return energy, eps, c


def mo_integrals(hcore, eri, c):
    h_mo = c.T @ hcore @ c
    g_mo = np.einsum("pi,qj,pqrs,rk,sl->ijkl", c, c, eri, c, c, optimize=True)
    return h_mo, g_mo


def write_fcidump(path, h_mo, g_mo, e_nuc, nelec):
    n = h_mo.shape[0]
    with open(path, "w") as f:
        f.write(f"&FCI NORB={n},NELEC={nelec},MS2=0,\n")
        f.write(" ORBSYM=" + "1," * n + "\n ISYM=1,\n&END\n")

        def emit(v, p, q, r, s):
            f.write(f"{v:24.16E} {p:3d} {q:3d} {r:3d} {s:3d}\n")

        for p in range(n):
            for q in range(p + 1):
                for r in range(p + 1):
                    smax = q if r == p else r
                    for s in range(smax + 1):
                        v = g_mo[p, q, r, s]
                        if abs(v) > 1e-15:
                            emit(v, p + 1, q + 1, r + 1, s + 1)
        for p in range(n):
            for q in range(p + 1):
                if abs(h_mo[p, q]) > 1e-15:
                    emit(h_mo[p, q], p + 1, q + 1, 0, 0)
        emit(e_nuc, 0, 0, 0, 0)


def write_t2(path, h_mo, g_mo, eps, n_occ):
    n = h_mo.shape[0]
    n_virt = n - n_occ
    with open(path, "w") as f:
        f.write(f"n_occ={n_occ} n_virt={n_virt}\n")
        for i in range(n_occ):
            for j in range(n_occ):
                for a in range(n_virt):
                    for b in range(n_virt):
                        if (i * n_virt + a) > (j * n_virt + b):
                            continue
                        denom = eps[i] + eps[j] - eps[n_occ + a] - eps[n_occ + b]
                        val = g_mo[i, n_occ + a, j, n_occ + b] / denom
                        if abs(val) > 1e-15:
                            f.write(f"{i} {j} {a} {b} {val:.16e}\n")


def hydrogen_chain(name, spacings_angstrom):
    for r in spacings_angstrom:
        rb = r * ANGSTROM_TO_BOHR
        n_atoms = 2 if name == "h2" else 4
        centers = [np.array([0.0, 0.0, k * rb]) for k in range(n_atoms)]
        charges = [(1.0, c) for c in centers]
        e_nuc = sum(
            1.0 / np.linalg.norm(centers[i] - centers[j])
            for i in range(n_atoms)
            for j in range(i + 1, n_atoms)
        )
        basis = Basis(centers)
        s, t = overlap_kinetic(basis)
        v = nuclear(basis, charges)
        eri = two_electron(basis)
        hcore = t + v
        n_occ = n_atoms // 2
        e_hf, eps, c = rhf(s, hcore, eri, n_occ, e_nuc)
        h_mo, g_mo = mo_integrals(hcore, eri, c)
        tag = f"{name}_sto6g_{r:.3f}"
        write_fcidump(f"{tag}.fcidump", h_mo, g_mo, e_nuc, n_atoms)
        print(f"{tag}: RHF = {e_hf:.10f}  eps = {np.round(eps, 6)}")
        if name == "h4" and abs(r - 2.0) < 1e-9:
            write_t2(f"{tag}.t2", h_mo, g_mo, eps, n_occ)


if __name__ == "__main__":
    hydrogen_chain("h2", [0.735, 2.5])
    hydrogen_chain("h4", [1.0, 1.5, 2.0, 2.5])
