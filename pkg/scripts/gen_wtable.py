"""Regenerate the Faddeeva anchor-node table used by the erfi kernels.

Nodes are a cartesian first-quadrant grid z = (i + j*1j) * H for
0 <= i, j < N.  Values are w(z) = exp(-z^2) erfc(-i z) evaluated in
arbitrary precision and rounded to double.  Run from the repo root:

    python scripts/gen_wtable.py
"""

import pathlib

import mpmath as mp
import numpy as np

H = 0.25
N = 28   # covers [0, 6.75]^2; the Taylor regime uses |z| <= 6.5

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "chirpedqpm" / "kernels" / "wtable.npz"


def w_exact(z):
    mp.mp.dps = 40
    zz = mp.mpc(z.real, z.imag)
    return mp.exp(-zz * zz) * mp.erfc(-1j * zz)


def main():
    table = np.empty((N, N), dtype=complex)
    for i in range(N):
        for j in range(N):
            v = w_exact(complex(i * H, j * H))
            table[i, j] = complex(float(v.real), float(v.imag))
    np.savez_compressed(OUT, table=table, h=np.float64(H))
    print(f"wrote {OUT} ({OUT.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
