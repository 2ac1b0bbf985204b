#!/usr/bin/env python3
"""Regenerate the reference b-files in this directory.

Values come from polynomial coefficient extraction, which shares no code
path with the crate:
  (1 + 2x)^n                 -> A013609, A265014
  ((1 + x) / (1 - x))^d      -> lattice points at L1 distance r in Z^d
                                (A266213, partial sums give A008288)
"""
import os

HERE = os.path.dirname(os.path.abspath(__file__))
TERMS = 1000


def poly_mul(a, b, trunc=None):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out[:trunc] if trunc else out


def one_plus_2x_pow(n):
    p = [1]
    for _ in range(n):
        p = poly_mul(p, [1, 2])
    return p


def l1_sphere_series(d, trunc):
    # (1 + x) / (1 - x) = 1 + 2x + 2x^2 + ...
    base = [1] + [2] * (trunc - 1)
    p = [1] + [0] * (trunc - 1)
    for _ in range(d):
        p = poly_mul(p, base, trunc)
    return p


def write(name, offset, values):
    with open(os.path.join(HERE, name), "w") as f:
        for i, v in enumerate(values):
            f.write(f"{offset + i} {v}\n")


def antidiagonals(square, terms):
    # square(d, r); antidiagonal n lists (n, 0), (n-1, 1), ..., (0, n)
    out, n = [], 0
    while len(out) < terms:
        for r in range(n + 1):
            out.append(square(n - r, r))
        n += 1
    return out[:terms]


def main():
    write("b005843.txt", 0, [2 * n for n in range(TERMS)])
    write("b024023.txt", 0, [3**n - 1 for n in range(200)])

    a013609, n = [], 0
    while len(a013609) < TERMS:
        a013609.extend(one_plus_2x_pow(n))
        n += 1
    write("b013609.txt", 0, a013609[:TERMS])

    a265014, n = [], 1
    while len(a265014) < TERMS:
        row, acc = one_plus_2x_pow(n), 0
        for k in range(1, n + 1):
            acc += row[k]
            a265014.append(acc)
        n += 1
    write("b265014.txt", 1, a265014[:TERMS])

    cache = {}

    def sphere(d, r):
        if d not in cache:
            cache[d] = l1_sphere_series(d, 64)
        return cache[d][r]

    write("b266213.txt", 0, antidiagonals(sphere, TERMS))
    write("b008288.txt", 0,
          antidiagonals(lambda d, r: sum(sphere(d, l) for l in range(r + 1)), TERMS))


if __name__ == "__main__":
    main()
