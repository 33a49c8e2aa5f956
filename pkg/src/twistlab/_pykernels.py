"""Pure-Python kernels for free reduction and substitution.

These mirror the compiled kernels in ``_kernels.pyx`` exactly. Words are
tuples of nonzero ints: ``i`` stands for x_i and ``-i`` for its inverse.
"""

from __future__ import annotations

from collections.abc import Sequence

from twistlab.errors import WordGrowthOverflow

Images = Sequence[tuple[int, ...]]


def reduce_letters(letters: Sequence[int], rank: int, limit: int) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if x == 0 or x > rank or -x > rank:
            raise ValueError(f"letter {x} out of range for rank {rank}")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
            if len(stack) > limit:
                raise WordGrowthOverflow(limit)
    return tuple(stack)


def substitute(
    images: Images, inv_images: Images, word: Sequence[int], limit: int
) -> tuple[int, ...]:
    rank = len(images)
    stack: list[int] = []
    pop = stack.pop
    push = stack.append
    for x in word:
        if x > 0 and x <= rank:
            image = images[x - 1]
        elif x < 0 and -x <= rank:
            image = inv_images[-x - 1]
        else:
            raise ValueError(f"letter {x} out of range for rank {rank}")
        for y in image:
            if stack and stack[-1] == -y:
                pop()
            else:
                push(y)
        # Images are reduced, so the stack peaks at the end of each image.
        if len(stack) > limit:
            raise WordGrowthOverflow(limit)
    return tuple(stack)


def compose_images(
    images: Images, inv_images: Images, inner: Images, limit: int
) -> tuple[tuple[int, ...], ...]:
    return tuple(substitute(images, inv_images, w, limit) for w in inner)
