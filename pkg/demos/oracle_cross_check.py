"""Fast path against brute force.

The generator prunes with canonical labelling and the deck checker hashes
cards in stages.  Here both are compared with a plain oracle that takes the
least adjacency code over all vertex permutations and compares decks
directly.
"""

from graphrecon import ALL_GRAPHS, DIGRAPHS, ORIENTED, TOURNAMENTS, ClassSpec
from graphrecon.oracle import cross_check

CASES = [(ALL_GRAPHS, 6), (TOURNAMENTS, 6), (ORIENTED, 5), (DIGRAPHS, 4), (ClassSpec.parse("girth5"), 7)]


def main():
    for spec, n in CASES:
        rep = cross_check(n, spec)
        print("\n".join(rep.lines()))
        print("  ->", "agree" if rep.ok else "DISAGREE")


if __name__ == "__main__":
    main()
