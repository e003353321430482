"""The three stored 7-vertex tournament pairs.

Each pair is non-isomorphic and has the same set of cards, but the cards
occur with different multiplicities.  Letters name the isomorphism class
of each card so the two decks can be compared by eye.
"""

from collections import Counter

from graphrecon.digraphs import load_fixtures, verify_fixture


def main():
    for f in load_fixtures():
        rep = verify_fixture(f)
        print("\n".join(rep.lines()))
        for member, letters in zip(f.members, f.card_letters):
            counts = Counter(letters)
            deck = " ".join(f"{c}x{k}" for c, k in sorted(counts.items()))
            print(f"  {member.n}-vertex member, cards {letters}: {deck}")
        print()


if __name__ == "__main__":
    main()
