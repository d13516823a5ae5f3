"""LSTM and attention primitives with hand-written backward passes.

Shapes: B = batch, T = time, D = input size, H = hidden size. LSTM weights are
stored stacked as W = [Wx; Wh] of shape (D + H, 4H), gate order i, f, o, g.
"""
from dataclasses import dataclass

import numpy as np


def sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def softmax(x: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = x - x.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


@dataclass
class LSTMCache:
    x: np.ndarray
    W: np.ndarray
    acts: np.ndarray      # (B, T, 4H) post-activation gates
    c_prev: np.ndarray    # (B, T, H)
    h_prev: np.ndarray    # (B, T, H)
    tanh_c: np.ndarray    # (B, T, H)
    reverse: bool


def _gates(a: np.ndarray, H: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    return sigmoid(a[:, :H]), sigmoid(a[:, H:2 * H]), sigmoid(a[:, 2 * H:3 * H]), np.tanh(a[:, 3 * H:])


def lstm_cell(
    x: np.ndarray, h: np.ndarray, c: np.ndarray, W: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """One step, no cache. Used for decoding."""
    H = h.shape[1]
    D = x.shape[1]
    a = x @ W[:D] + h @ W[D:] + b
    i, f, o, g = _gates(a, H)
    c = f * c + i * g
    return o * np.tanh(c), c


def lstm_forward(
    x: np.ndarray,
    h0: np.ndarray,
    c0: np.ndarray,
    W: np.ndarray,
    b: np.ndarray,
    reverse: bool = False,
) -> tuple[np.ndarray, tuple[np.ndarray, np.ndarray], LSTMCache]:
    B, T, D = x.shape
    H = h0.shape[1]
    Wh = W[D:]
    xproj = x @ W[:D] + b

    hs = np.empty((B, T, H), dtype=x.dtype)
    acts = np.empty((B, T, 4 * H), dtype=x.dtype)
    c_prev = np.empty((B, T, H), dtype=x.dtype)
    h_prev = np.empty((B, T, H), dtype=x.dtype)
    tanh_c = np.empty((B, T, H), dtype=x.dtype)

    h, c = h0, c0
    for t in (range(T - 1, -1, -1) if reverse else range(T)):
        a = xproj[:, t] + h @ Wh
        i, f, o, g = _gates(a, H)
        h_prev[:, t] = h
        c_prev[:, t] = c
        c = f * c + i * g
        tc = np.tanh(c)
        h = o * tc
        acts[:, t, :H] = i
        acts[:, t, H:2 * H] = f
        acts[:, t, 2 * H:3 * H] = o
        acts[:, t, 3 * H:] = g
        tanh_c[:, t] = tc
        hs[:, t] = h

    cache = LSTMCache(x=x, W=W, acts=acts, c_prev=c_prev, h_prev=h_prev, tanh_c=tanh_c, reverse=reverse)
    return hs, (h, c), cache


def lstm_backward(
    dhs: np.ndarray,
    dh_last: np.ndarray,
    dc_last: np.ndarray,
    cache: LSTMCache,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Backprop through time.

    dhs: gradient w.r.t. every output h_t; dh_last / dc_last: gradient w.r.t. the final state.
    Returns dx, dh0, dc0, dW, db.
    """
    x, W = cache.x, cache.W
    B, T, D = x.shape
    H = dhs.shape[2]
    Wh = W[D:]

    dxproj = np.empty((B, T, 4 * H), dtype=dhs.dtype)
    dWh = np.zeros_like(Wh)
    dh_next = dh_last
    dc_next = dc_last

    for t in (range(T) if cache.reverse else range(T - 1, -1, -1)):
        i = cache.acts[:, t, :H]
        f = cache.acts[:, t, H:2 * H]
        o = cache.acts[:, t, 2 * H:3 * H]
        g = cache.acts[:, t, 3 * H:]
        tc = cache.tanh_c[:, t]

        dh = dhs[:, t] + dh_next
        dc = dc_next + dh * o * (1.0 - tc * tc)
        do = dh * tc
        di = dc * g
        dg = dc * i
        df = dc * cache.c_prev[:, t]
        dc_next = dc * f

        da = dxproj[:, t]
        da[:, :H] = di * i * (1.0 - i)
        da[:, H:2 * H] = df * f * (1.0 - f)
        da[:, 2 * H:3 * H] = do * o * (1.0 - o)
        da[:, 3 * H:] = dg * (1.0 - g * g)

        dWh += cache.h_prev[:, t].T @ da
        dh_next = da @ Wh.T

    flat = dxproj.reshape(-1, 4 * H)
    dWx = x.reshape(-1, D).T @ flat
    db = flat.sum(axis=0)
    dx = dxproj @ W[:D].T
    return dx, dh_next, dc_next, np.concatenate([dWx, dWh], axis=0), db


def dot_attention_forward(
    dec_h: np.ndarray, enc: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Global dot attention. dec_h (B, U, H), enc (B, T, H) -> context (B, U, H), alpha (B, U, T)."""
    scores = np.einsum("buh,bth->but", dec_h, enc)
    alpha = softmax(scores, axis=-1)
    return np.einsum("but,bth->buh", alpha, enc), alpha


def dot_attention_backward(
    dctx: np.ndarray, dec_h: np.ndarray, enc: np.ndarray, alpha: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Returns gradients w.r.t. dec_h and enc."""
    dalpha = np.einsum("buh,bth->but", dctx, enc)
    denc = np.einsum("but,buh->bth", alpha, dctx)
    dscores = alpha * (dalpha - (dalpha * alpha).sum(axis=-1, keepdims=True))
    ddec = np.einsum("but,bth->buh", dscores, enc)
    denc += np.einsum("but,buh->bth", dscores, dec_h)
    return ddec, denc
