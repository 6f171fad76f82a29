"""Sliding-window double-and-add, shared by both group implementations."""

from __future__ import annotations

from typing import Callable, TypeVar

T = TypeVar("T")


def window_width(bits: int) -> int:
    if bits < 16:
        return 1
    if bits < 128:
        return 3
    if bits < 512:
        return 4
    if bits < 2048:
        return 5
    return 6


def multiply(k: int, x: T, add: Callable[[T, T], T], double: Callable[[T], T], zero: T) -> T:
    """Compute k*x scanning the bits of k from the top.

    Odd multiples x, 3x, ..., (2^w - 1)x are precomputed and each maximal
    window of w bits ending in a 1 costs one addition.
    """
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if k == 0:
        return zero
    w = window_width(k.bit_length())
    table = [x]
    if w > 1:
        x2 = double(x)
        for _ in range((1 << (w - 1)) - 1):
            table.append(add(table[-1], x2))
    bits = bin(k)[2:]
    acc = zero
    started = False
    i = 0
    n = len(bits)
    while i < n:
        if bits[i] == "0":
            if started:
                acc = double(acc)
            i += 1
            continue
        j = min(i + w, n)
        while bits[j - 1] == "0":
            j -= 1
        value = int(bits[i:j], 2)
        if started:
            for _ in range(j - i):
                acc = double(acc)
            acc = add(acc, table[value >> 1])
        else:
            acc = table[value >> 1]
            started = True
        i = j
    return acc
