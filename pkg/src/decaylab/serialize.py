"""CSV / JSON emission and parsing of search and sequence records.

Exact integers are always written as decimal strings; float columns are
convenience copies.  Floats are written with ``repr`` so a parse gives
back the identical value.
"""
from __future__ import annotations

import csv
import io
import json
from typing import IO, Iterable

from .codes import UserCoords
from .decay_search import DecayRecord, reduced_pair_count
from .exact_ring import QuadInt, RingElem, parse_ring_elem
from .sequences import SequenceRecord

__all__ = [
    "DECAY_COLUMNS",
    "SEQUENCE_COLUMNS",
    "decay_to_row",
    "decay_from_row",
    "decay_to_json",
    "decay_from_json",
    "sequence_to_row",
    "sequence_from_row",
    "sequence_to_json",
    "sequence_from_json",
    "write_csv",
    "read_decay_csv",
    "read_sequence_csv",
    "dumps_json",
]

DECAY_COLUMNS = [
    "n1", "n2", "detsq_p", "detsq_q", "detsq_float",
    "w1_a", "w1_b", "w1_c", "w1_d",
    "w2_a", "w2_b", "w2_c", "w2_d",
    "visited_pairs", "wall_time_s",
]  # fmt: skip

SEQUENCE_COLUMNS = [
    "n", "a_n", "b_n", "m", "delta", "delta_float",
    "detsq_p", "detsq_q",
    "x1_a", "x1_b", "x1_c", "x1_d",
    "x2_a", "x2_b", "x2_c", "x2_d",
    "z_a", "z_b", "z_c", "z_d",
    "split_mask", "factor_labels", "factors",
]  # fmt: skip


def _coords(prefix: str, v) -> dict[str, str]:
    return {f"{prefix}_{k}": str(x) for k, x in zip("abcd", v)}


def _read_coords(row: dict, prefix: str) -> tuple[int, int, int, int]:
    return tuple(int(row[f"{prefix}_{k}"]) for k in "abcd")


# -- decay records -------------------------------------------------------------


def decay_to_row(r: DecayRecord) -> dict[str, str]:
    row = {
        "n1": str(r.n1),
        "n2": str(r.n2),
        "detsq_p": str(r.min_detsq.p),
        "detsq_q": str(r.min_detsq.q),
        "detsq_float": repr(r.min_detsq_float),
    }
    row.update(_coords("w1", r.witness1))
    row.update(_coords("w2", r.witness2))
    row["visited_pairs"] = str(r.visited_pairs)
    row["wall_time_s"] = repr(r.wall_time)
    return row


def decay_from_row(row: dict[str, str]) -> DecayRecord:
    n1, n2 = int(row["n1"]), int(row["n2"])
    return DecayRecord(
        n1=n1,
        n2=n2,
        min_detsq=QuadInt(int(row["detsq_p"]), int(row["detsq_q"])),
        min_detsq_float=float(row["detsq_float"]),
        witness1=UserCoords(*_read_coords(row, "w1")),
        witness2=UserCoords(*_read_coords(row, "w2")),
        orbit_reduced_count=reduced_pair_count(n1, n2),
        visited_pairs=int(row["visited_pairs"]),
        wall_time=float(row["wall_time_s"]),
    )


def decay_to_json(r: DecayRecord) -> dict:
    return {
        "n1": r.n1,
        "n2": r.n2,
        "detsq": {"p": str(r.min_detsq.p), "q": str(r.min_detsq.q)},
        "detsq_float": r.min_detsq_float,
        "decay": r.decay_value,
        "witness1": {k: str(v) for k, v in r.witness1._asdict().items()},
        "witness2": {k: str(v) for k, v in r.witness2._asdict().items()},
        "orbit_reduced_count": r.orbit_reduced_count,
        "visited_pairs": r.visited_pairs,
        "confirmed_pairs": r.confirmed_pairs,
        "wall_time_s": r.wall_time,
    }


def decay_from_json(obj: dict) -> DecayRecord:
    return DecayRecord(
        n1=int(obj["n1"]),
        n2=int(obj["n2"]),
        min_detsq=QuadInt(int(obj["detsq"]["p"]), int(obj["detsq"]["q"])),
        min_detsq_float=float(obj["detsq_float"]),
        witness1=UserCoords(*(int(obj["witness1"][k]) for k in "abcd")),
        witness2=UserCoords(*(int(obj["witness2"][k]) for k in "abcd")),
        orbit_reduced_count=int(obj["orbit_reduced_count"]),
        visited_pairs=int(obj["visited_pairs"]),
        wall_time=float(obj["wall_time_s"]),
        confirmed_pairs=int(obj.get("confirmed_pairs", 0)),
    )


# -- sequence records ----------------------------------------------------------


def sequence_to_row(r: SequenceRecord) -> dict[str, str]:
    row = {
        "n": str(r.n),
        "a_n": str(r.a_n),
        "b_n": str(r.b_n),
        "m": str(r.m),
        "delta": r.delta_rounded,
        "delta_float": repr(r.delta_estimate),
        "detsq_p": str(r.detsq.p),
        "detsq_q": str(r.detsq.q),
    }
    row.update(_coords("x1", r.x1))
    row.update(_coords("x2", r.x2))
    row.update(_coords("z", r.z_n))
    row["split_mask"] = str(r.split_mask)
    row["factor_labels"] = ";".join(r.factor_labels)
    row["factors"] = ";".join(str(f) for f in r.factors)
    return row


def sequence_from_row(row: dict[str, str]) -> SequenceRecord:
    return SequenceRecord(
        n=int(row["n"]),
        a_n=int(row["a_n"]),
        b_n=int(row["b_n"]),
        z_n=RingElem(*_read_coords(row, "z")),
        factors=tuple(parse_ring_elem(f) for f in row["factors"].split(";") if f),
        factor_labels=tuple(l for l in row["factor_labels"].split(";") if l),
        x1=RingElem(*_read_coords(row, "x1")),
        x2=RingElem(*_read_coords(row, "x2")),
        m=int(row["m"]),
        detsq=QuadInt(int(row["detsq_p"]), int(row["detsq_q"])),
        delta_estimate=float(row["delta_float"]),
        split_mask=int(row["split_mask"]),
    )


def _elem_json(x: RingElem) -> dict[str, str]:
    return {k: str(v) for k, v in zip("abcd", x.coords)}


def _elem_from_json(obj: dict) -> RingElem:
    return RingElem(*(int(obj[k]) for k in "abcd"))


def sequence_to_json(r: SequenceRecord) -> dict:
    return {
        "n": r.n,
        "a_n": str(r.a_n),
        "b_n": str(r.b_n),
        "z_n": _elem_json(r.z_n),
        "factor_labels": list(r.factor_labels),
        "factors": [_elem_json(f) for f in r.factors],
        "x1": _elem_json(r.x1),
        "x2": _elem_json(r.x2),
        "m": str(r.m),
        "detsq": {"p": str(r.detsq.p), "q": str(r.detsq.q)},
        "delta": r.delta_rounded,
        "delta_float": r.delta_estimate,
        "split_mask": r.split_mask,
    }


def sequence_from_json(obj: dict) -> SequenceRecord:
    return SequenceRecord(
        n=int(obj["n"]),
        a_n=int(obj["a_n"]),
        b_n=int(obj["b_n"]),
        z_n=_elem_from_json(obj["z_n"]),
        factors=tuple(_elem_from_json(f) for f in obj["factors"]),
        factor_labels=tuple(obj["factor_labels"]),
        x1=_elem_from_json(obj["x1"]),
        x2=_elem_from_json(obj["x2"]),
        m=int(obj["m"]),
        detsq=QuadInt(int(obj["detsq"]["p"]), int(obj["detsq"]["q"])),
        delta_estimate=float(obj["delta_float"]),
        split_mask=int(obj["split_mask"]),
    )


# -- files ---------------------------------------------------------------------


def write_csv(rows: Iterable[dict[str, str]], columns: list[str], fh: IO[str]) -> None:
    writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def _read_rows(src: IO[str] | str) -> list[dict[str, str]]:
    fh = io.StringIO(src) if isinstance(src, str) else src
    return list(csv.DictReader(fh))


def read_decay_csv(src: IO[str] | str) -> list[DecayRecord]:
    return [decay_from_row(r) for r in _read_rows(src)]


def read_sequence_csv(src: IO[str] | str) -> list[SequenceRecord]:
    return [sequence_from_row(r) for r in _read_rows(src)]


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"

