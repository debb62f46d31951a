"""Writes the bundled b-files under crates/core/fixtures.

Values come straight from each sequence's defining formula, computed here
independently of the Rust generators.
"""

from math import comb
from pathlib import Path

TERMS = 100


def by_rows(entry):
    out, n = [], 0
    while len(out) < TERMS:
        out.extend(entry(n, k) for k in range(n + 1))
        n += 1
    return out[:TERMS]


SEQUENCES = {
    "A287326": ("Triangle read by rows: T(n,k) = 6*k*(n-k) + 1", by_rows(lambda n, k: 6 * k * (n - k) + 1)),
    "A007318": ("Pascal's triangle read by rows: C(n,k)", by_rows(comb)),
    "A077028": ("Rascal triangle read by rows: T(n,k) = k*(n-k) + 1", by_rows(lambda n, k: k * (n - k) + 1)),
    "A008458": ("Coordination sequence for hexagonal lattice: 1, 6n", [1] + [6 * n for n in range(1, TERMS)]),
    "A000124": ("Central polygonal numbers: (n^2+n+2)/2", [(n * n + n + 2) // 2 for n in range(TERMS)]),
    "A275709": ("2n^3 + 3n^2", [2 * n**3 + 3 * n**2 for n in range(TERMS)]),
    "A028896": ("3n^2 + 3n", [3 * n * n + 3 * n for n in range(TERMS)]),
    "A000012": ("The all 1's sequence", [1] * TERMS),
}


def main():
    root = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"
    root.mkdir(parents=True, exist_ok=True)
    for sid, (title, values) in SEQUENCES.items():
        lines = [f"# {sid} {title}", f"# {len(values)} terms, offset 0"]
        lines += [f"{i} {v}" for i, v in enumerate(values)]
        (root / f"b{sid[1:]}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
