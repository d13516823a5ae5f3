import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.domain.estimation import HyperParams, Vocab
from src.domain.estimation.vocab import BOS_ID, EOS_ID, PAD_ID, UNK_ID
from src.domain.exceptions import IncompatibleModel, ValidationError
from src.domain.pairs import PairInstance
from .functional import (
    dot_attention_backward,
    dot_attention_forward,
    lstm_backward,
    lstm_cell,
    lstm_forward,
    softmax,
)

logger = logging.getLogger(__name__)

BLOCKED_OUTPUTS = [PAD_ID, BOS_ID, UNK_ID]


@dataclass(frozen=True)
class Batch:
    """Sources share one length; targets are right-padded with PAD."""

    src: np.ndarray       # (B, T)
    tgt_in: np.ndarray    # (B, U) starting with BOS
    tgt_out: np.ndarray   # (B, U) ending with EOS

    def __len__(self) -> int:
        return self.src.shape[0]


def make_batch(instances: Sequence[PairInstance], vocab: Vocab) -> Batch:
    lengths = {len(inst.source) for inst in instances}
    if len(lengths) != 1:
        raise ValidationError(f"A batch needs one source length, got {sorted(lengths)}", field="source")

    src = np.array([vocab.encode_source(inst.source) for inst in instances], dtype=np.int64)
    targets = [[vocab.encode_target(inst.target)] for inst in instances]
    width = max(len(t) for t in targets) + 1
    tgt_in = np.full((len(instances), width), PAD_ID, dtype=np.int64)
    tgt_out = np.full((len(instances), width), PAD_ID, dtype=np.int64)
    for row, ids in enumerate(targets):
        tgt_in[row, : len(ids) + 1] = [BOS_ID, *ids]
        tgt_out[row, : len(ids) + 1] = [*ids, EOS_ID]
    return Batch(src=src, tgt_in=tgt_in, tgt_out=tgt_out)


def param_shapes(hp: HyperParams, vocab: Vocab) -> dict[str, tuple[int, ...]]:
    E, H, Hd = hp.embed_dim, hp.hidden_dim, hp.encoder_dim
    shapes: dict[str, tuple[int, ...]] = {
        "src_emb": (len(vocab.source), E),
        "tgt_emb": (len(vocab.target), E),
    }
    for layer in range(hp.layers):
        d_in = E if layer == 0 else H
        for direction in ("fwd", "bwd"):
            shapes[f"enc_{direction}_{layer}_W"] = (d_in + Hd, 4 * Hd)
            shapes[f"enc_{direction}_{layer}_b"] = (4 * Hd,)
    for layer in range(hp.layers):
        d_in = E if layer == 0 else H
        shapes[f"dec_{layer}_W"] = (d_in + H, 4 * H)
        shapes[f"dec_{layer}_b"] = (4 * H,)
    shapes["attn_W"] = (2 * H, H)
    shapes["out_W"] = (H, len(vocab.target))
    shapes["out_b"] = (len(vocab.target),)
    return shapes


def param_group(name: str) -> str:
    return name.split("_", 1)[0] if not name.endswith("_emb") else "embeddings"


class Seq2SeqModel:
    """Bidirectional LSTM encoder, LSTM decoder, global dot attention.

    Each encoder direction has hidden_dim / 2 units; decoder layer l starts from the
    concatenated final states of encoder layer l.
    """

    def __init__(self, hp: HyperParams, vocab: Vocab, params: dict[str, np.ndarray]):
        expected = param_shapes(hp, vocab)
        if list(params) != list(expected):
            raise IncompatibleModel(
                f"Parameter names {list(params)} do not match the architecture", field="params"
            )
        for name, shape in expected.items():
            if params[name].shape != shape:
                raise IncompatibleModel(
                    f"Parameter {name} has shape {params[name].shape}, expected {shape}", field=name
                )
        self.hp = hp
        self.vocab = vocab
        self.params = params

    @classmethod
    def initialize(cls, hp: HyperParams, vocab: Vocab, rng: np.random.Generator) -> "Seq2SeqModel":
        dtype = np.dtype(hp.precision.value)
        params = {
            name: rng.uniform(-hp.param_init, hp.param_init, size=shape).astype(dtype)
            for name, shape in param_shapes(hp, vocab).items()
        }
        return cls(hp, vocab, params)

    @property
    def dtype(self) -> np.dtype:
        return self.params["src_emb"].dtype

    @property
    def n_params(self) -> int:
        return sum(p.size for p in self.params.values())

    def _dropout_mask(self, shape: tuple[int, ...], rng: np.random.Generator | None) -> np.ndarray | None:
        if rng is None or self.hp.dropout == 0.0:
            return None
        keep = 1.0 - self.hp.dropout
        return ((rng.random(shape) < keep) / keep).astype(self.dtype)

    def _encode(self, src: np.ndarray, src_mask: np.ndarray | None):
        if src.ndim != 2 or src.shape[1] == 0:
            raise ValidationError("Source sequences must be non-empty", field="source")
        p = self.params
        B = src.shape[0]
        Hd = self.hp.encoder_dim

        x = p["src_emb"][src]
        if src_mask is not None:
            x = x * src_mask

        caches = []
        finals = []
        layer_in = x
        for layer in range(self.hp.layers):
            zeros = np.zeros((B, Hd), dtype=self.dtype)
            hf, (hf_T, cf_T), cache_f = lstm_forward(
                layer_in, zeros, zeros, p[f"enc_fwd_{layer}_W"], p[f"enc_fwd_{layer}_b"]
            )
            hb, (hb_T, cb_T), cache_b = lstm_forward(
                layer_in, zeros, zeros, p[f"enc_bwd_{layer}_W"], p[f"enc_bwd_{layer}_b"], reverse=True
            )
            layer_in = np.concatenate([hf, hb], axis=2)
            caches.append((cache_f, cache_b))
            finals.append((np.concatenate([hf_T, hb_T], axis=1), np.concatenate([cf_T, cb_T], axis=1)))
        return layer_in, finals, caches

    def _attend(self, dec_h: np.ndarray, enc: np.ndarray):
        ctx, alpha = dot_attention_forward(dec_h, enc)
        joined = np.concatenate([ctx, dec_h], axis=-1)
        return np.tanh(joined @ self.params["attn_W"]), joined, alpha

    def loss_and_grads(
        self,
        batch: Batch,
        rng: np.random.Generator | None = None,
        need_grads: bool = True,
    ) -> tuple[float, dict[str, np.ndarray]]:
        """Mean token cross-entropy over non-pad target positions.

        Dropout is applied only when `rng` is given.
        """
        p = self.params
        H, Hd = self.hp.hidden_dim, self.hp.encoder_dim
        src, tgt_in, tgt_out = batch.src, batch.tgt_in, batch.tgt_out
        B, T = src.shape
        U = tgt_in.shape[1]

        src_mask = self._dropout_mask((B, T, self.hp.embed_dim), rng)
        enc, finals, enc_caches = self._encode(src, src_mask)

        dec_in = p["tgt_emb"][tgt_in]
        dec_caches = []
        for layer in range(self.hp.layers):
            h0, c0 = finals[layer]
            dec_in, _, cache = lstm_forward(dec_in, h0, c0, p[f"dec_{layer}_W"], p[f"dec_{layer}_b"])
            dec_caches.append(cache)
        dec_h = dec_in

        attn, joined, alpha = self._attend(dec_h, enc)
        attn_mask = self._dropout_mask(attn.shape, rng)
        attn_out = attn * attn_mask if attn_mask is not None else attn
        logits = attn_out @ p["out_W"] + p["out_b"]

        shifted = logits - logits.max(axis=-1, keepdims=True)
        log_z = np.log(np.exp(shifted).sum(axis=-1, keepdims=True))
        log_probs = shifted - log_z
        token_mask = (tgt_out != PAD_ID).astype(self.dtype)
        n_tokens = token_mask.sum()
        picked = np.take_along_axis(log_probs, tgt_out[..., None], axis=-1)[..., 0]
        loss = float(-(picked * token_mask).sum() / n_tokens)
        if not need_grads:
            return loss, {}

        grads: dict[str, np.ndarray] = {}
        V = logits.shape[-1]
        dlogits = np.exp(log_probs)
        np.put_along_axis(
            dlogits, tgt_out[..., None],
            np.take_along_axis(dlogits, tgt_out[..., None], axis=-1) - 1.0, axis=-1,
        )
        dlogits *= (token_mask / n_tokens)[..., None]

        grads["out_W"] = attn_out.reshape(-1, H).T @ dlogits.reshape(-1, V)
        grads["out_b"] = dlogits.sum(axis=(0, 1))
        dattn = dlogits @ p["out_W"].T
        if attn_mask is not None:
            dattn *= attn_mask
        dpre = dattn * (1.0 - attn * attn)
        grads["attn_W"] = joined.reshape(-1, 2 * H).T @ dpre.reshape(-1, H)
        djoined = dpre @ p["attn_W"].T
        ddec_att, denc = dot_attention_backward(djoined[..., :H], dec_h, enc, alpha)
        d = djoined[..., H:] + ddec_att

        init_grads = [None] * self.hp.layers
        zeros_dec = np.zeros((B, H), dtype=self.dtype)
        for layer in reversed(range(self.hp.layers)):
            d, dh0, dc0, dW, db = lstm_backward(d, zeros_dec, zeros_dec, dec_caches[layer])
            grads[f"dec_{layer}_W"] = dW
            grads[f"dec_{layer}_b"] = db
            init_grads[layer] = (dh0, dc0)
        grads["tgt_emb"] = np.zeros_like(p["tgt_emb"])
        np.add.at(grads["tgt_emb"], tgt_in, d)

        d = denc
        for layer in reversed(range(self.hp.layers)):
            dh0, dc0 = init_grads[layer]
            cache_f, cache_b = enc_caches[layer]
            dx_f, _, _, dW_f, db_f = lstm_backward(d[..., :Hd], dh0[:, :Hd], dc0[:, :Hd], cache_f)
            dx_b, _, _, dW_b, db_b = lstm_backward(d[..., Hd:], dh0[:, Hd:], dc0[:, Hd:], cache_b)
            grads[f"enc_fwd_{layer}_W"], grads[f"enc_fwd_{layer}_b"] = dW_f, db_f
            grads[f"enc_bwd_{layer}_W"], grads[f"enc_bwd_{layer}_b"] = dW_b, db_b
            d = dx_f + dx_b
        if src_mask is not None:
            d = d * src_mask
        grads["src_emb"] = np.zeros_like(p["src_emb"])
        np.add.at(grads["src_emb"], src, d)

        return loss, {name: grads[name] for name in p}

    def loss(self, batch: Batch) -> float:
        return self.loss_and_grads(batch, need_grads=False)[0]

    def greedy_decode(self, src: np.ndarray, max_len: int | None = None) -> list[list[int]]:
        """Target ids per row, EOS excluded. PAD, BOS and UNK are never emitted."""
        p = self.params
        max_len = max_len or self.hp.max_decode_len
        B = src.shape[0]
        enc, finals, _ = self._encode(src, None)

        states = [(h.copy(), c.copy()) for h, c in finals]
        token = np.full(B, BOS_ID, dtype=np.int64)
        outputs: list[list[int]] = [[] for _ in range(B)]
        done = np.zeros(B, dtype=bool)
        for _ in range(max_len):
            x = p["tgt_emb"][token]
            for layer in range(self.hp.layers):
                h, c = lstm_cell(x, *states[layer], p[f"dec_{layer}_W"], p[f"dec_{layer}_b"])
                states[layer] = (h, c)
                x = h
            alpha = softmax(np.einsum("bh,bth->bt", x, enc), axis=-1)
            ctx = np.einsum("bt,bth->bh", alpha, enc)
            attn = np.tanh(np.concatenate([ctx, x], axis=1) @ p["attn_W"])
            logits = attn @ p["out_W"] + p["out_b"]
            logits[:, BLOCKED_OUTPUTS] = -np.inf
            token = logits.argmax(axis=1)

            for row in np.flatnonzero(~done):
                if token[row] == EOS_ID:
                    done[row] = True
                else:
                    outputs[row].append(int(token[row]))
            if done.all():
                break
        return outputs

    def translate(self, sources: Sequence[Sequence[str]]) -> list[list[str]]:
        """Decode sources of one length into target token strings."""
        src = np.array([self.vocab.encode_source(s) for s in sources], dtype=np.int64)
        return [[self.vocab.decode_target(i) for i in ids] for ids in self.greedy_decode(src)]
