"""Pure-Python pair-enumeration kernel; import-time fallback when the
compiled extension is unavailable.

Same contract as the compiled kernel: exact counts over all i<j pairs,
batched through numpy so desk-scale inputs stay tractable.
"""

from __future__ import annotations

import numpy as np

# Rows per broadcast block; bounds peak temporary size to a few MB.
_BLOCK_ELEMENTS = 2_000_000


def count_pairs(ref: np.ndarray, pred: np.ndarray) -> tuple[int, int, int, int]:
    n = ref.shape[0]
    concordant = discordant = tied_ref = tied_pred = 0
    if n < 2:
        return 0, 0, 0, 0
    rows_per_block = max(1, _BLOCK_ELEMENTS // n)
    cols = np.arange(n)
    for start in range(0, n, rows_per_block):
        stop = min(start + rows_per_block, n)
        upper = cols[None, :] > np.arange(start, stop)[:, None]
        dr = ref[start:stop, None] - ref[None, :]
        dp = pred[start:stop, None] - pred[None, :]
        ref_tied = dr == 0
        pred_tied = dp == 0
        tied_ref += int(np.count_nonzero(upper & ref_tied))
        tied_pred += int(np.count_nonzero(upper & pred_tied))
        untied = upper & ~ref_tied & ~pred_tied
        same_sign = (dr > 0) == (dp > 0)
        concordant += int(np.count_nonzero(untied & same_sign))
        discordant += int(np.count_nonzero(untied & ~same_sign))
    return concordant, discordant, tied_ref, tied_pred
