#!/usr/bin/env python3
"""Search for Weyl-Heisenberg SIC fiducial vectors and polish them to high precision.

A unit vector psi is a WH SIC fiducial when |<psi|D_{k,l}|psi>|^2 = 1/(d+1) for
every (k,l) != (0,0). The overlap moduli do not depend on the phase convention
of D_{k,l}, so any fiducial found here works with the library's operators.

Usage: find_fiducials.py [--dims 2 3 4 5] [--digits 40] [--seed 1] > sic_fiducials.json
"""

import argparse
import json
import sys

import mpmath as mp
import numpy as np
from scipy.optimize import least_squares


def shift_clock(d):
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x, z


def displacements(d):
    x, z = shift_clock(d)
    ops = []
    for k in range(d):
        for l in range(d):
            if k == 0 and l == 0:
                continue
            ops.append(np.linalg.matrix_power(x, k) @ np.linalg.matrix_power(z, l))
    return ops


def residuals(params, d, ops):
    psi = params[:d] + 1j * params[d:]
    psi = psi / np.linalg.norm(psi)
    target = 1.0 / (d + 1)
    return np.array([abs(np.vdot(psi, op @ psi)) ** 2 - target for op in ops])


def float_search(d, rng, restarts=200):
    ops = displacements(d)
    best = None
    for _ in range(restarts):
        x0 = rng.normal(size=2 * d)
        sol = least_squares(residuals, x0, args=(d, ops), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        err = np.max(np.abs(sol.fun))
        if best is None or err < best[0]:
            best = (err, sol.x)
        if err < 1e-13:
            break
    return best


def mp_displacements(d):
    omega = mp.exp(2j * mp.pi / d)
    ops = []
    for k in range(d):
        for l in range(d):
            if k == 0 and l == 0:
                continue
            m = mp.matrix(d, d)
            for j in range(d):
                # X^k Z^l |j> = omega^{l j} |j + k>
                m[(j + k) % d, j] = omega ** (l * j)
            ops.append(m)
    return ops


def mp_residuals(vec, d, ops):
    psi = [mp.mpc(vec[i], vec[d + i]) for i in range(d)]
    norm2 = mp.fsum(abs(c) ** 2 for c in psi)
    target = mp.mpf(1) / (d + 1)
    out = []
    for op in ops:
        acc = mp.mpc(0)
        for r in range(d):
            row = mp.fsum(op[r, c] * psi[c] for c in range(d))
            acc += mp.conj(psi[r]) * row
        out.append(abs(acc) ** 2 / norm2 ** 2 - target)
    return out


def polish(x, d, digits):
    mp.mp.dps = digits + 20
    ops = mp_displacements(d)
    vec = [mp.mpf(float(v)) for v in x]
    h = mp.mpf(10) ** (-(digits // 2 + 8))
    for _ in range(60):
        r = mp_residuals(vec, d, ops)
        err = max(abs(v) for v in r)
        if err < mp.mpf(10) ** (-(digits + 5)):
            break
        jac = mp.matrix(len(r), len(vec))
        for p in range(len(vec)):
            shifted = list(vec)
            shifted[p] += h
            rp = mp_residuals(shifted, d, ops)
            shifted[p] -= 2 * h
            rm = mp_residuals(shifted, d, ops)
            for q in range(len(r)):
                jac[q, p] = (rp[q] - rm[q]) / (2 * h)
        # Minimum-norm Gauss-Newton step through the pseudo-inverse; the
        # fiducial manifold has gauge directions, so the Jacobian is singular.
        u, s, v = mp.svd_r(jac)
        rvec = mp.matrix(r)
        step = mp.matrix(len(vec), 1)
        cutoff = s[0] * mp.mpf(10) ** (-(digits // 2))
        for i in range(len(s)):
            if s[i] <= cutoff:
                continue
            coeff = mp.fsum(u[q, i] * rvec[q] for q in range(len(r))) / s[i]
            for p in range(len(vec)):
                step[p] += coeff * v[i, p]
        vec = [vec[p] - step[p] for p in range(len(vec))]
    psi = [mp.mpc(vec[i], vec[d + i]) for i in range(d)]
    norm = mp.sqrt(mp.fsum(abs(c) ** 2 for c in psi))
    psi = [c / norm for c in psi]
    # Fix the global phase so the first nonzero component is real positive.
    lead = next(c for c in psi if abs(c) > mp.mpf(10) ** -10)
    phase = lead / abs(lead)
    psi = [c / phase for c in psi]
    final = max(abs(v) for v in mp_residuals([c.real for c in psi] + [c.imag for c in psi], d, ops))
    return psi, final


def format_component(c, digits):
    tiny = mp.mpf(10) ** (-digits)
    re_part = mp.mpf(0) if abs(c.real) < tiny else c.real
    im_part = mp.mpf(0) if abs(c.imag) < tiny else c.imag
    return [mp.nstr(re_part, digits), mp.nstr(im_part, digits)]


def qubit_record(digits):
    # Bloch vector (1,1,1)/sqrt(3): the (+,+) vertex of the qubit tetrahedron.
    mp.mp.dps = digits + 20
    theta = mp.acos(1 / mp.sqrt(3))
    psi = [mp.mpc(mp.cos(theta / 2)), mp.exp(1j * mp.pi / 4) * mp.sin(theta / 2)]
    return {"d": 2, "vector": [format_component(c, digits) for c in psi]}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    parser.add_argument("--digits", type=int, default=40)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    records = [qubit_record(args.digits)] if 2 in args.dims else []
    for d in (d for d in args.dims if d != 2):
        err, x = float_search(d, rng)
        print(f"d={d}: float residual {err:.3e}", file=sys.stderr)
        psi, final = polish(x, d, args.digits)
        print(f"d={d}: polished residual {mp.nstr(final, 5)}", file=sys.stderr)
        records.append({"d": d, "vector": [format_component(c, args.digits) for c in psi]})
    json.dump({"type": "sic-fiducials", "records": records}, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
