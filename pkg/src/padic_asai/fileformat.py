"""Line-oriented text formats for packets (.pkt) and transfer reports.

Both formats are sequences of sections.  A section starts with a header
``[name]`` or ``[name arg]`` and holds ``key: value`` lines.  Blank lines and
everything after ``#`` are ignored.  Values are exact: rationals are written
``num/den`` and symbolic values are polynomial expressions in the declared
symbols.  See the README for the full grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .asai_transfer import GL4EigenPacket, GL4Local, GL4PPart, RefinementCharacter, TransferSign
from .errors import InvalidPacket
from .exact_algebra import PolyRing, ScalarSyntaxError, format_rational, format_scalar, parse_scalar
from .hilbert_eigensystem import (
    HilbertEigenPacket,
    HilbertWeight,
    RefinementData,
    Regime,
    SatakeLocal,
    validate_packet,
)
from .quadratic_field import PrimeIdealLabel, QuadField, Slot
from .weight_slope import GL4Weight

_HEADER = re.compile(r"^\[\s*([A-Za-z_][A-Za-z0-9_]*)(?:\s+(\S+))?\s*\]$")
_ENTRY = re.compile(r"^([A-Za-z_][A-Za-z0-9_.~]*)\s*:\s*(.*)$")


@dataclass(frozen=True)
class Diagnostic:
    line: int | None
    message: str

    def __str__(self) -> str:
        return self.message if self.line is None else f"line {self.line}: {self.message}"


@dataclass
class Section:
    name: str
    arg: str | None
    line: int
    entries: dict = field(default_factory=dict)  # key -> (value, line)

    def get(self, key):
        return self.entries.get(key, (None, None))


def split_sections(text: str) -> tuple[list[Section], list[Diagnostic]]:
    sections: list[Section] = []
    diags: list[Diagnostic] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = _HEADER.match(line)
        if head:
            sections.append(Section(head.group(1), head.group(2), lineno))
            continue
        entry = _ENTRY.match(line)
        if not entry:
            diags.append(Diagnostic(lineno, f"cannot read {line!r}"))
            continue
        if not sections:
            diags.append(Diagnostic(lineno, "entry before the first section header"))
            continue
        key, value = entry.group(1), entry.group(2).strip()
        sec = sections[-1]
        if key in sec.entries:
            diags.append(Diagnostic(lineno, f"duplicate key {key!r}"))
            continue
        sec.entries[key] = (value, lineno)
    return sections, diags


# -- packets ------------------------------------------------------------------

_PACKET_KEYS = {"d", "n", "v", "p", "regime", "mode", "k", "symbols"}
_HECKE_KEYS = {
    "inert": {"type", "a", "s"},
    "split": {"type", "first.a", "first.s", "second.a", "second.s"},
}


class _PacketReader:
    def __init__(self, text: str):
        self.text = text
        self.diags: list[Diagnostic] = []
        self.ring: PolyRing | None = None
        self.lines: dict[str, int] = {}

    def fail(self, line, msg):
        self.diags.append(Diagnostic(line, msg))

    def integer(self, sec: Section, key: str, required=True):
        value, line = sec.get(key)
        if value is None:
            if required:
                self.fail(sec.line, f"[{sec.name}] is missing {key!r}")
            return None
        try:
            return int(value)
        except ValueError:
            self.fail(line, f"{key}: expected an integer, got {value!r}")
            return None

    def pair(self, sec: Section, key: str):
        value, line = sec.get(key)
        if value is None:
            self.fail(sec.line, f"[{sec.name}] is missing {key!r}")
            return None
        parts = [x.strip() for x in value.split(",")]
        try:
            a, b = (int(x) for x in parts)
        except ValueError:
            self.fail(line, f"{key}: expected two integers 'x, y', got {value!r}")
            return None
        return a, b

    def scalar(self, value: str, line: int):
        try:
            return parse_scalar(value, self.ring)
        except ScalarSyntaxError as exc:
            self.fail(line, f"malformed value: {exc}")
            return None

    def read(self) -> HilbertEigenPacket | None:
        sections, self.diags = split_sections(self.text)
        by_name: dict[str, list[Section]] = {}
        for sec in sections:
            by_name.setdefault(sec.name, []).append(sec)
        for name, secs in by_name.items():
            if name not in ("packet", "refinement", "valuations", "hecke"):
                self.fail(secs[0].line, f"unknown section [{name}]")
            elif name != "hecke" and len(secs) > 1:
                self.fail(secs[1].line, f"section [{name}] appears twice")
        if "packet" not in by_name:
            self.fail(None, "missing [packet] section")
            return None
        head = by_name["packet"][0]
        for key, (_, line) in head.entries.items():
            if key not in _PACKET_KEYS:
                self.fail(line, f"unknown key {key!r} in [packet]")
            self.lines[key] = line

        mode, mode_line = head.get("mode")
        mode = mode or "numeric"
        if mode not in ("numeric", "symbolic"):
            self.fail(mode_line, f"unknown mode {mode!r} (expected numeric or symbolic)")
            mode = "numeric"
        symbols, sym_line = head.get("symbols")
        if mode == "symbolic":
            names = [x.strip() for x in (symbols or "").split(",") if x.strip()]
            try:
                self.ring = PolyRing(names)
            except ValueError as exc:
                self.fail(sym_line or head.line, str(exc))
                self.ring = PolyRing([])
        elif symbols is not None:
            self.fail(sym_line, "symbols are only allowed in symbolic mode")

        d = self.integer(head, "d")
        field_ = None
        if d is not None:
            try:
                field_ = QuadField(d)
            except ValueError as exc:
                self.fail(self.lines.get("d"), str(exc))
        n = self.pair(head, "n")
        v = self.pair(head, "v")
        p = self.integer(head, "p")
        k = self.integer(head, "k", required=False)
        regime_text, regime_line = head.get("regime")
        regime = None
        if regime_text is None:
            self.fail(head.line, "[packet] is missing 'regime'")
        else:
            try:
                regime = Regime(regime_text)
            except ValueError:
                self.fail(regime_line, f"unknown regime {regime_text!r} (expected split or inert)")

        refinement = self.read_refinement(by_name, regime)
        locals_ = self.read_hecke(by_name.get("hecke", []))
        if None in (field_, n, v, p, regime, refinement) or locals_ is None or self.diags:
            return None
        return HilbertEigenPacket(
            field_, HilbertWeight(n[0], n[1], v[0], v[1]), p, locals_, refinement, self.ring, k
        )

    def read_refinement(self, by_name, regime):
        if "refinement" not in by_name:
            self.fail(None, "missing [refinement] section")
            return None
        sec = by_name["refinement"][0]
        self.lines["refinement"] = sec.line
        allowed = {"alpha_p", "alpha_pc"} if regime is Regime.SPLIT else {"alpha"}
        for key, (_, line) in sec.entries.items():
            if regime is not None and key not in allowed:
                self.fail(line, f"unexpected key {key!r} in [refinement] for the {regime.value} regime")
        if regime is None:
            return None
        values = {}
        for key in sorted(allowed):
            text, line = sec.get(key)
            if text is None:
                self.fail(sec.line, f"[refinement] is missing {key!r}")
                continue
            values[key] = self.scalar(text, line)
        valuations = {}
        for vsec in by_name.get("valuations", [])[:1]:
            for key, (text, line) in vsec.entries.items():
                try:
                    valuations[key] = Fraction(text)
                except ValueError:
                    self.fail(line, f"malformed rational {text!r}")
        if any(x is None for x in values.values()) or len(values) != len(allowed):
            return None
        if regime is Regime.SPLIT:
            return RefinementData(regime, values["alpha_p"], values["alpha_pc"], valuations)
        return RefinementData(regime, values["alpha"], None, valuations)

    def read_hecke(self, secs):
        out = {}
        ok = True
        for sec in secs:
            try:
                ell = int(sec.arg)
            except (TypeError, ValueError):
                self.fail(sec.line, f"[hecke] needs a prime, e.g. [hecke 7]; got {sec.arg!r}")
                ok = False
                continue
            self.lines[f"hecke {ell}"] = sec.line
            kind, kind_line = sec.get("type")
            if kind not in _HECKE_KEYS:
                self.fail(kind_line or sec.line, f"[hecke {ell}] type must be split or inert, got {kind!r}")
                ok = False
                continue
            for key, (_, line) in sec.entries.items():
                if key not in _HECKE_KEYS[kind]:
                    self.fail(line, f"unknown key {key!r} in [hecke {ell}]")
            slots = [(Slot.WHOLE, "")] if kind == "inert" else [(Slot.FIRST, "first."), (Slot.SECOND, "second.")]
            for slot, prefix in slots:
                label = PrimeIdealLabel(ell, slot)
                got = []
                for key in ("a", "s"):
                    text, line = sec.get(prefix + key)
                    if text is None:
                        self.fail(sec.line, f"[hecke {ell}] is missing {prefix + key!r}")
                        got.append(None)
                    else:
                        got.append(self.scalar(text, line))
                if None in got:
                    ok = False
                    continue
                if label in out:
                    self.fail(sec.line, f"second [hecke {ell}] section")
                    ok = False
                out[label] = SatakeLocal(label, got[0], got[1])
        return out if ok else None

    def locate(self, message: str) -> int | None:
        """Best line for a validation message."""
        m = re.search(r"\bprime (\d+)", message)
        if m and f"hecke {m.group(1)}" in self.lines:
            return self.lines[f"hecke {m.group(1)}"]
        starts = {
            "m mismatch": "n",
            "parity": "n",
            "negative n": "n",
            "weight": "n",
            "p=": "p",
            "p must": "p",
            "regime": "regime",
            "refinement": "refinement",
            "split refinement": "refinement",
            "inert refinement": "refinement",
            "k must": "k",
        }
        for prefix, key in starts.items():
            if message.startswith(prefix):
                return self.lines.get(key)
        return None


def read_packet(text: str) -> tuple[HilbertEigenPacket | None, list[Diagnostic]]:
    """Parse and validate; the packet is None whenever diagnostics are non-empty."""
    reader = _PacketReader(text)
    pkt = reader.read()
    if pkt is None:
        return None, reader.diags or [Diagnostic(None, "unreadable packet")]
    problems = validate_packet(pkt)
    if problems:
        return None, [Diagnostic(reader.locate(msg), msg) for msg in problems]
    return pkt, []


def parse_packet_text(text: str) -> HilbertEigenPacket:
    pkt, diags = read_packet(text)
    if diags:
        raise InvalidPacket(diags)
    return pkt


def parse_packet(path) -> HilbertEigenPacket:
    return parse_packet_text(Path(path).read_text())


def render_packet(pkt: HilbertEigenPacket) -> str:
    w = pkt.weight
    lines = [
        "[packet]",
        f"d: {pkt.field.d}",
        f"n: {w.n1}, {w.n2}",
        f"v: {w.v1}, {w.v2}",
        f"p: {pkt.p}",
        f"regime: {pkt.regime.value}",
        f"mode: {'symbolic' if pkt.symbolic else 'numeric'}",
    ]
    if pkt.k is not None:
        lines.append(f"k: {pkt.k}")
    if pkt.symbolic:
        lines.append(f"symbols: {', '.join(pkt.ring.names)}")
    ref = pkt.refinement
    lines += ["", "[refinement]"]
    if ref.regime is Regime.SPLIT:
        lines += [f"alpha_p: {format_scalar(ref.alpha)}", f"alpha_pc: {format_scalar(ref.alpha_c)}"]
    else:
        lines.append(f"alpha: {format_scalar(ref.alpha)}")
    if ref.valuations:
        lines += ["", "[valuations]"]
        lines += [f"{k}: {format_rational(v)}" for k, v in sorted(ref.valuations.items())]
    for ell in pkt.supported_primes():
        labels = sorted(label for label in pkt.locals if label.prime == ell)
        lines += ["", f"[hecke {ell}]"]
        if labels[0].slot is Slot.WHOLE:
            loc = pkt.locals[labels[0]]
            lines += ["type: inert", f"a: {format_scalar(loc.a)}", f"s: {format_scalar(loc.s)}"]
        else:
            lines.append("type: split")
            for label in labels:
                loc = pkt.locals[label]
                lines += [
                    f"{label.slot.value}.a: {format_scalar(loc.a)}",
                    f"{label.slot.value}.s: {format_scalar(loc.s)}",
                ]
    return "\n".join(lines) + "\n"


# -- reports ----------------------------------------------------------------


def _join(values) -> str:
    return ", ".join(format_scalar(x) for x in values)


def render_report(image: GL4EigenPacket, ring: PolyRing | None = None, extra: dict | None = None) -> str:
    """Text form of a transferred packet; ``extra`` adds [name] -> {key: text} sections."""
    mu = image.weight
    lines = [
        "[gl4]",
        f"sign: {image.sign.value}",
        f"p: {image.p}",
        f"regime: {image.regime.value}",
        f"mu: {mu.mu1}, {mu.mu2}, {mu.mu3}, {mu.mu4}",
        f"w: {mu.w}",
        f"mode: {'symbolic' if ring is not None else 'numeric'}",
    ]
    if ring is not None:
        lines.append(f"symbols: {', '.join(ring.names)}")
    for ell in sorted(image.locals):
        loc = image.locals[ell]
        lines += ["", f"[local {ell}]"]
        lines += [f"T{i}: {format_scalar(t)}" for i, t in enumerate(loc.T, start=1)]
        coeffs = list(reversed(loc.charpoly().coeffs))
        lines.append(f"charpoly: {_join(coeffs)}")
    tilde = "U~" if image.regime is Regime.INERT else "U"
    lines += ["", "[ppart]"]
    lines += [f"{tilde}{i}: {format_scalar(u)}" for i, u in enumerate(image.ppart.U, start=1)]
    lines.append(f"controlling: {format_scalar(image.ppart.controlling)}")
    if image.refinement is not None:
        name = "u~" if image.regime is Regime.INERT else "u"
        lines += ["", "[refinement]"]
        lines += [f"{name}{i}: {format_scalar(u)}" for i, u in enumerate(image.refinement.values, start=1)]
    for section, entries in (extra or {}).items():
        lines += ["", f"[{section}]"]
        lines += [f"{k}: {v}" for k, v in entries.items()]
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> GL4EigenPacket:
    """Read back the parts of a report that determine the GL(4) eigenpacket."""
    sections, diags = split_sections(text)
    if diags:
        raise InvalidPacket(diags)
    by_name = {}
    for sec in sections:
        by_name.setdefault(sec.name, []).append(sec)
    if "gl4" not in by_name or "ppart" not in by_name:
        raise InvalidPacket([Diagnostic(None, "report needs [gl4] and [ppart] sections")])
    head = by_name["gl4"][0]

    def need(sec, key):
        value, _ = sec.get(key)
        if value is None:
            raise InvalidPacket([Diagnostic(sec.line, f"[{sec.name}] is missing {key!r}")])
        return value

    def scalar(sec, key):
        text = need(sec, key)
        try:
            return parse_scalar(text, ring)
        except ScalarSyntaxError as exc:
            raise InvalidPacket([Diagnostic(sec.get(key)[1], f"malformed value: {exc}")]) from None

    try:
        sign = TransferSign(need(head, "sign"))
        regime = Regime(need(head, "regime"))
        p = int(need(head, "p"))
        mu = [int(x) for x in need(head, "mu").split(",")]
        w = int(need(head, "w"))
    except ValueError as exc:
        raise InvalidPacket([Diagnostic(head.line, f"bad [gl4] header: {exc}")]) from None
    ring = None
    if head.get("mode")[0] == "symbolic":
        ring = PolyRing(x.strip() for x in (head.get("symbols")[0] or "").split(",") if x.strip())
    locals_ = {}
    for sec in by_name.get("local", []):
        try:
            ell = int(sec.arg)
        except (TypeError, ValueError):
            raise InvalidPacket([Diagnostic(sec.line, f"[local] needs a prime, got {sec.arg!r}")]) from None
        locals_[ell] = GL4Local(ell, tuple(scalar(sec, f"T{i}") for i in range(1, 5)))
    pp = by_name["ppart"][0]
    tilde = "U~" if regime is Regime.INERT else "U"
    ppart = GL4PPart(regime, tuple(scalar(pp, f"{tilde}{i}") for i in range(1, 5)))
    char = None
    if "refinement" in by_name:
        sec = by_name["refinement"][0]
        name = "u~" if regime is Regime.INERT else "u"
        char = RefinementCharacter(regime, tuple(scalar(sec, f"{name}{i}") for i in range(1, 5)))
    return GL4EigenPacket(sign, p, locals_, ppart, GL4Weight(*mu, w=w), char)
