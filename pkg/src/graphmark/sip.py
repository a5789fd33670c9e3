"""Watermark-to-permutation codec.

An integer watermark w with n-bit binary representation B is encoded as a
self-inverting permutation of odd length n' = 2n+1. The pipeline: pad B into
the block 0^n || B || 1, complement it, split the complement's positions into
the zero set X and the one set Y, lay them out as the bitonic permutation
X || reverse(Y), then fold that sequence into an involution by pairing its
ends. Decoding inverts every step, and strict mode refuses any input that
fails one of the structural tamper checks (odd length, self-inversion,
bitonic shape, block layout).

Watermarks are plain Python ints (arbitrary precision), so bit lengths in the
millions are fine; every pass below is linear in n'.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TamperError

_FLIP = str.maketrans("01", "10")


def check_watermark(w: int) -> None:
    """Reject anything that is not a positive integer (bools included)."""
    if not isinstance(w, int) or isinstance(w, bool):
        raise ValueError(f"watermark must be an int, got {type(w).__name__}")
    if w < 1:
        raise ValueError(f"watermark must be positive, got {w}")


def _check_permutation(p) -> int:
    """Verify p is a permutation of 1..len(p); return its length."""
    n = len(p)
    if n == 0:
        raise TamperError("not a permutation: empty sequence")
    seen = bytearray(n + 1)
    for v in p:
        if not isinstance(v, int):
            raise ValueError(f"permutation entries must be ints, got {type(v).__name__}")
        if not 1 <= v <= n or seen[v]:
            raise TamperError(f"not a permutation of 1..{n}: bad or repeated value {v}")
        seen[v] = 1
    return n


def bit_blocks(w: int) -> tuple[str, str]:
    """Return the padded bit block 0^n||B||1 and its complement for w."""
    check_watermark(w)
    bits = bin(w)[2:]
    padded = "0" * len(bits) + bits + "1"
    return padded, padded.translate(_FLIP)


def position_sequences(bit_seq: str) -> tuple[list[int], list[int]]:
    """1-indexed positions of '0's and of '1's, each strictly increasing."""
    zeros = []
    ones = []
    for i, c in enumerate(bit_seq, 1):
        if c == "0":
            zeros.append(i)
        elif c == "1":
            ones.append(i)
        else:
            raise ValueError(f"bit sequence may only contain 0/1, got {c!r}")
    return zeros, ones


def bitonic_permutation(w: int) -> list[int]:
    """Bitonic layout X || reverse(Y) of the complemented block's positions."""
    _, flipped = bit_blocks(w)
    zeros, ones = position_sequences(flipped)
    ones.reverse()
    return zeros + ones


def watermark_to_sip(w: int) -> list[int]:
    """Encode w as a self-inverting permutation of odd length 2n+1."""
    seq = bitonic_permutation(w)
    total = len(seq)
    # Fold ends inward: positions k and total-1-k form a 2-cycle, the middle
    # element (total is odd) stays fixed.
    perm = list(range(total + 1))
    for k in range(total // 2):
        a = seq[k]
        b = seq[total - 1 - k]
        perm[a] = b
        perm[b] = a
    return perm[1:]


def cycle_representation(p) -> list[tuple[int, ...]]:
    """All 1- and 2-cycles of an involution, ordered by smallest element.

    Raises TamperError if p is not a permutation or some cycle is longer
    than 2 (not self-inverting).
    """
    _check_permutation(p)
    cycles: list[tuple[int, ...]] = []
    for i, v in enumerate(p, 1):
        if v == i:
            cycles.append((i,))
        else:
            if p[v - 1] != i:
                raise TamperError(
                    f"not self-inverting: position {i} maps to {v} "
                    f"but {v} maps to {p[v - 1]}")
            if v > i:
                cycles.append((i, v))
    return cycles


def bitonic_from_cycles(cycles) -> list[int]:
    """Rebuild the bitonic permutation from 1-/2-cycles by the two-cursor fill.

    2-cycles place their larger element at the front cursor and their smaller
    at the back cursor; 1-cycles advance the front cursor only. Cycles are
    processed in ascending order of smallest element. Raises TamperError when
    the cycle multiset does not cover 1..n' exactly (a reconstruction gap).
    """
    total = 0
    for c in cycles:
        if len(c) not in (1, 2):
            raise TamperError(f"cycle {c} has length {len(c)}, expected 1 or 2")
        if len(c) == 2 and not c[0] < c[1]:
            raise TamperError(f"2-cycle {c} must be stored (smaller, larger)")
        total += len(c)
    seen = bytearray(total + 1)
    for c in cycles:
        for v in c:
            if not 1 <= v <= total or seen[v]:
                raise TamperError(
                    f"cycles do not cover 1..{total}: bad or repeated element {v}")
            seen[v] = 1
    out = [0] * total
    front = 0
    back = total - 1
    for c in sorted(cycles):
        if len(c) == 2:
            out[front] = c[1]
            out[back] = c[0]
            front += 1
            back -= 1
        else:
            out[front] = c[0]
            front += 1
    return out


def _rebuild_bitonic_inline(p) -> list[int]:
    """Single-pass involution -> bitonic rebuild used by the decoder.

    Same result as bitonic_from_cycles(cycle_representation(p)) without
    materializing the cycle tuples; p must already be a valid permutation.
    """
    total = len(p)
    out = [0] * total
    front = 0
    back = total - 1
    for i, v in enumerate(p, 1):
        if v == i:
            out[front] = i
            front += 1
        else:
            if p[v - 1] != i:
                raise TamperError(
                    f"not self-inverting: position {i} maps to {v} "
                    f"but {v} maps to {p[v - 1]}")
            if v > i:
                out[front] = v
                out[back] = i
                front += 1
                back -= 1
    return out


def _increasing_prefix_length(seq) -> int:
    k = 1
    while k < len(seq) and seq[k - 1] < seq[k]:
        k += 1
    return k


def sip_to_watermark(p, strict: bool = True) -> int:
    """Decode a self-inverting permutation back to its watermark.

    Always enforces that p is an odd-length self-inverting permutation.
    With strict set (the default) the bitonic and block properties are
    enforced as well, so any tampering those checks expose is refused;
    lenient mode returns whatever the naive extraction yields.
    """
    total = _check_permutation(p)
    if total % 2 == 0:
        raise TamperError(f"length violation: even length {total}")
    seq = _rebuild_bitonic_inline(p)
    split = _increasing_prefix_length(seq)
    if strict:
        for k in range(split, total - 1):
            if seq[k] <= seq[k + 1]:
                raise TamperError(
                    "bitonic violation: descending tail rises at "
                    f"position {k + 2} (value {seq[k + 1]})")
    n = (total - 1) // 2
    if n == 0:
        raise TamperError("block violation: no payload bits")
    # The complement block has '1' exactly at the zero-positions X of the
    # encoded sequence, i.e. at seq[:split].
    block = bytearray(b"0") * total
    for pos in seq[:split]:
        block[pos - 1] = 0x31
    if strict:
        if block[total - 1] != 0x31:
            raise TamperError("block violation: final bit is not 1")
        zeros = block[:n].count(0x30)
        if zeros != n:
            raise TamperError(
                f"block violation: leading {n} bits contain {n - zeros} ones")
    return int(block[n:2 * n].decode("ascii"), 2)


@dataclass(frozen=True)
class SipTamperReport:
    """Outcome of the four structural checks on a claimed SIP.

    Flags are tri-state: True (check passed), False (check failed), None
    (check could not be evaluated because an earlier failure makes it
    meaningless, e.g. the block layout of an even-length sequence). A report
    is valid only when every flag is True. details carries one human-readable
    line per failure, naming positions.
    """

    length_ok: bool | None
    sip_ok: bool | None
    bitonic_ok: bool | None
    block_ok: bool | None
    details: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return (self.length_ok is True and self.sip_ok is True
                and self.bitonic_ok is True and self.block_ok is True)

    def violated(self) -> tuple[str, ...]:
        """Names of checks that actually failed (False, not skipped)."""
        names = []
        for name, flag in (("length", self.length_ok), ("sip", self.sip_ok),
                           ("bitonic", self.bitonic_ok), ("block", self.block_ok)):
            if flag is False:
                names.append(name)
        return tuple(names)


def validate_sip(seq) -> SipTamperReport:
    """Run every tamper check on seq and report all failures.

    Checks, in order: odd length and permutation of 1..n'; self-inversion;
    bitonic shape of the rebuilt sequence; block layout of the recovered bit
    string. Later checks that depend on an earlier failed one are skipped
    (None), never silently passed.
    """
    details: list[str] = []
    total = len(seq)
    odd = total % 2 == 1
    if not odd:
        details.append(f"length: even length {total}")
    in_range = all(isinstance(v, int) and 1 <= v <= total for v in seq)
    is_perm = False
    if in_range:
        marks = bytearray(total + 1)
        dupes = []
        for v in seq:
            if marks[v]:
                dupes.append(v)
            marks[v] = 1
        is_perm = not dupes
        if dupes:
            details.append(f"length: repeated values {sorted(set(dupes))}")
    else:
        details.append(f"length: values outside 1..{total}")
    length_ok = odd and is_perm

    if not in_range:
        # Cannot even index; nothing downstream is evaluable.
        return SipTamperReport(length_ok, None, None, None, tuple(details))

    sip_ok = True
    for i, v in enumerate(seq, 1):
        if seq[v - 1] != i:
            sip_ok = False
            details.append(
                f"sip: position {i} maps to {v} but {v} maps to {seq[v - 1]}")
    if not is_perm or not sip_ok:
        return SipTamperReport(length_ok, sip_ok, None, None, tuple(details))

    rebuilt = _rebuild_bitonic_inline(list(seq))
    split = _increasing_prefix_length(rebuilt)
    bitonic_ok = True
    for k in range(split, total - 1):
        if rebuilt[k] <= rebuilt[k + 1]:
            bitonic_ok = False
            details.append(
                f"bitonic: descending tail rises at position {k + 2} "
                f"(value {rebuilt[k + 1]})")

    if not odd:
        return SipTamperReport(length_ok, sip_ok, bitonic_ok, None, tuple(details))

    n = (total - 1) // 2
    block = bytearray(b"0") * total
    for pos in rebuilt[:split]:
        block[pos - 1] = 0x31
    block_ok = True
    for k in range(n):
        if block[k] != 0x30:
            block_ok = False
            details.append(f"block: bit {k + 1} of the leading zero run is 1")
    if block[total - 1] != 0x31:
        block_ok = False
        details.append(f"block: final bit (position {total}) is not 1")
    return SipTamperReport(length_ok, sip_ok, bitonic_ok, block_ok, tuple(details))
