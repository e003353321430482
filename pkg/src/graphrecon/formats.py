"""graph6 and digraph6 text encodings."""

from __future__ import annotations

from .graphs import LabelledGraph


class FormatError(ValueError):
    """Malformed graph6/digraph6 input; ``offset`` is the first bad character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise ValueError(f"order {n} too large for graph6")


def _pack(bitlist: list[int]) -> str:
    bitlist = bitlist + [0] * (-len(bitlist) % 6)
    out = []
    for i in range(0, len(bitlist), 6):
        v = 0
        for b in bitlist[i : i + 6]:
            v = (v << 1) | b
        out.append(chr(63 + v))
    return "".join(out)


def _decode_n(text: str, pos: int) -> tuple[int, int]:
    if pos >= len(text):
        raise FormatError("missing order", pos)
    if text[pos] != "~":
        return _digit(text, pos), pos + 1
    if pos + 1 < len(text) and text[pos + 1] == "~":
        raise FormatError("orders above 258047 are not supported", pos)
    if pos + 4 > len(text):
        raise FormatError("truncated order", len(text))
    n = 0
    for i in range(pos + 1, pos + 4):
        n = (n << 6) | _digit(text, i)
    return n, pos + 4


def _digit(text: str, pos: int) -> int:
    v = ord(text[pos]) - 63
    if not 0 <= v < 64:
        raise FormatError(f"invalid character {text[pos]!r}", pos)
    return v


def _unpack(text: str, pos: int, count: int) -> list[int]:
    need = -(-count // 6)
    if len(text) - pos < need:
        raise FormatError(f"expected {need} data characters, found {len(text) - pos}", len(text))
    if len(text) - pos > need:
        raise FormatError("trailing characters", pos + need)
    out = []
    for i in range(pos, pos + need):
        v = _digit(text, i)
        out.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(out[count:]):
        raise FormatError("nonzero padding bits", pos + need - 1)
    return out[:count]


def to_graph6(g: LabelledGraph) -> str:
    if g.directed:
        raise ValueError("graph6 encodes undirected graphs; use digraph6")
    bitlist = [int(g.has_arc(i, j)) for j in range(1, g.n) for i in range(j)]
    return _encode_n(g.n) + _pack(bitlist)


def to_digraph6(g: LabelledGraph) -> str:
    if not g.directed:
        raise ValueError("digraph6 encodes digraphs; use graph6")
    bitlist = [int(g.has_arc(i, j)) for i in range(g.n) for j in range(g.n)]
    return "&" + _encode_n(g.n) + _pack(bitlist)


def from_graph6(text: str) -> LabelledGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if text.startswith("&"):
        raise FormatError("digraph6 header in graph6 input", 0)
    n, pos = _decode_n(text, 0)
    bitlist = _unpack(text, pos, n * (n - 1) // 2)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitlist[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return LabelledGraph(n, tuple(rows))


def from_digraph6(text: str) -> LabelledGraph:
    text = text.strip()
    if text.startswith(">>digraph6<<"):
        text = text[12:]
    if not text.startswith("&"):
        raise FormatError("digraph6 must start with '&'", 0)
    n, pos = _decode_n(text, 1)
    bitlist = _unpack(text, pos, n * n)
    rows = tuple(sum(bitlist[i * n + j] << j for j in range(n)) for i in range(n))
    for i in range(n):
        if (rows[i] >> i) & 1:
            raise FormatError(f"loop at vertex {i}", pos)
    return LabelledGraph(n, rows, True)


def encode(g: LabelledGraph) -> str:
    return to_digraph6(g) if g.directed else to_graph6(g)


def decode(text: str) -> LabelledGraph:
    return from_digraph6(text) if text.strip().startswith(("&", ">>digraph6<<")) else from_graph6(text)
