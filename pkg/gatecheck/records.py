# -*- coding: utf-8 -*-
"""

Records: grammar classes for sequence documents

A sequence document is one JSON object. Pulses are listed in application
order (first pulse first), which is the reverse of how operator products
are written.

"""
import json
import math
import re

from .core import GrammarClass, ParseError, ValidationError, grammar
from .dynamics import DriveSpec, PulseSpec
from .hilbert import SUPPORTED_ATOMS

ORDER = 'first-applied-first'
TARGET_KINDS = ('CPHASE', 'CCPHASE')

_NUMBER = r'(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?'
_ANGLE_RE = re.compile(
    r'^\s*(?P<sign>[+-])?\s*(?P<coef>' + _NUMBER + r')?\s*\*?\s*'
    r'(?P<pi>pi)?\s*(?:/\s*(?P<div>' + _NUMBER + r'))?\s*$')


def parse_angle(value):
    """Angle in radians from a number or a pi-expression.

    Accepts ``'pi'``, ``'-pi/2'``, ``'pi/2.8284'``, ``'0.25pi'``,
    ``'0.25*pi'``, ``'3pi/4'`` and plain decimals.
    """
    if isinstance(value, bool):
        raise ValueError('angle must be a number or pi-expression')
    if isinstance(value, (int, float)):
        return float(value)
    match = _ANGLE_RE.match(str(value).strip().lower())
    if not match or not (match.group('coef') or match.group('pi')):
        raise ValueError('cannot read angle {0!r}'.format(value))
    angle = float(match.group('coef') or 1.0)
    if match.group('pi'):
        angle *= math.pi
    if match.group('div'):
        divisor = float(match.group('div'))
        if divisor == 0:
            raise ValueError('angle {0!r} divides by zero'.format(value))
        angle /= divisor
    return -angle if match.group('sign') == '-' else angle


def _not_bool(name, value):
    if isinstance(value, bool):
        raise ValueError('{0} must be a number'.format(name))


class PulseRecord(GrammarClass):
    """One pulse of a sequence document"""

    @grammar((int, float, str))
    def area(value):
        """float or pi-expression : pulse area in radians, > 0"""
        _not_bool('area', value)
        if not parse_angle(value) > 0:
            raise ValueError('area must be > 0, got {0!r}'.format(value))

    @grammar((int, float, str))
    def phase(value):
        """float or pi-expression : laser phase in radians"""
        _not_bool('phase', value)
        parse_angle(value)

    @grammar(str)
    def mask(value):
        """string : driven atoms as a bitstring, default all ones"""
        if not value or set(value) - set('01'):
            raise ValueError('mask must be a bitstring, got {0!r}'
                             .format(value))

    @grammar(int)
    def doppler(value):
        """int : +1, or -1 when the Doppler detuning is inverted"""
        if isinstance(value, bool) or value not in (1, -1):
            raise ValueError('doppler must be +1 or -1, got {0!r}'
                             .format(value))

    @grammar(bool)
    def inversion_before(value):
        """bool : a Doppler inversion happens right before this pulse"""

    @grammar((int, float))
    def rabi(value):
        """float : Rabi frequency in units of the nominal one, default 1"""
        _not_bool('rabi', value)
        if not value > 0:
            raise ValueError('rabi must be > 0, got {0!r}'.format(value))

    @grammar((int, float))
    def detuning(value):
        """float : nominal detuning of every atom, default 0"""
        _not_bool('detuning', value)

    def validate(self):
        super(PulseRecord, self).validate()
        for key in ('area', 'phase'):
            if getattr(self, key) is None:
                raise ValidationError('{0} is required for a pulse'
                                      .format(key))

    def to_pulse(self, n_atoms):
        """Convert to a :class:`PulseSpec` for an ``n_atoms`` register."""
        self.validate()
        mask = self.mask
        if mask is not None and len(mask) != n_atoms:
            raise ValueError('mask {0!r} does not match {1} atoms'
                             .format(mask, n_atoms))
        drive = DriveSpec(
            rabi=float(1.0 if self.rabi is None else self.rabi),
            phase=parse_angle(self.phase),
            mask=None if mask is None else tuple(c == '1' for c in mask),
            detuning=float(self.detuning or 0.0))
        return PulseSpec(area=parse_angle(self.area), drive=drive,
                         doppler_sign=self.doppler or 1,
                         post_inversion=bool(self.inversion_before))

    @classmethod
    def from_pulse(cls, pulse):
        """Record for a :class:`PulseSpec`; default-valued optional fields
        are left out."""
        drive = pulse.drive
        record = cls(area=float(pulse.area), phase=float(drive.phase),
                     doppler=int(pulse.doppler_sign),
                     inversion_before=bool(pulse.post_inversion))
        if drive.mask is not None:
            record.mask = ''.join('1' if m else '0' for m in drive.mask)
        if drive.rabi != 1.0:
            record.rabi = float(drive.rabi)
        if drive.detuning != 0.0:
            record.detuning = float(drive.detuning)
        return record


class TargetRecord(GrammarClass):
    """Target gate of a sequence document"""

    @grammar(str)
    def kind(value):
        """string : 'CPHASE' or 'CCPHASE'"""
        if value not in TARGET_KINDS:
            raise ValueError('kind must be one of {0}'.format(TARGET_KINDS))

    @grammar((int, float, str))
    def phase(value):
        """float or pi-expression : controlled phase"""
        _not_bool('phase', value)
        parse_angle(value)

    @grammar(bool)
    def local(value):
        """bool : the target is meant up to single-qubit Z phases"""


class SequenceRecord(GrammarClass):
    """A whole sequence document"""

    _fields = ('name', 'variant', 'n_atoms', 'order', 'target', 'pulses')

    @grammar(str)
    def name(value):
        """string : protocol name"""
        if not value:
            raise ValueError('name must not be empty')

    @grammar(int)
    def variant(value):
        """int : area variant, 1 or 2"""
        if value not in (1, 2):
            raise ValueError('variant must be 1 or 2, got {0!r}'
                             .format(value))

    @grammar(int)
    def n_atoms(value):
        """int : number of atoms"""
        if value not in SUPPORTED_ATOMS:
            raise ValueError('n_atoms must be one of {0}'
                             .format(SUPPORTED_ATOMS))

    @grammar(str)
    def order(value):
        """string : pulse order, always 'first-applied-first'"""
        if value != ORDER:
            raise ValueError('order must be {0!r}'.format(ORDER))

    @grammar(TargetRecord)
    def target(value):
        """TargetRecord : gate the sequence implements"""

    @grammar(list)
    def pulses(value):
        """list of PulseRecord : pulses in application order"""
        for pulse in value:
            if not isinstance(pulse, PulseRecord):
                raise ValueError('pulses must hold PulseRecord objects')

    def validate(self):
        super(SequenceRecord, self).validate()
        for key in ('name', 'n_atoms', 'pulses'):
            if getattr(self, key) is None:
                raise ValidationError('{0} is required for a sequence'
                                      .format(key))

    @classmethod
    def loads(cls, text):
        """Read a document, reporting problems with their line number."""
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno)
        if not isinstance(doc, dict):
            raise ParseError('document must be a JSON object', 1)

        record = cls()
        for key, value in doc.items():
            if key not in cls._fields:
                raise ParseError('unknown field {0!r}'.format(key),
                                 _key_line(text, key))
            try:
                if key == 'target':
                    value = TargetRecord(**value)
                elif key == 'pulses':
                    value = _load_pulses(text, value)
                setattr(record, key, value)
            except ParseError:
                raise
            except (ValueError, TypeError) as e:
                raise ParseError(str(e), _key_line(text, key))
        try:
            record.validate()
        except ValidationError as e:
            raise ParseError(str(e))
        return record

    def to_fields(self, lines=None):
        """Plain fields for building a Sequence: name, variant, n_atoms,
        pulses (tuple of PulseSpec) and target as (kind, phase, local)."""
        lines = lines or []
        pulses = []
        for k, record in enumerate(self.pulses):
            try:
                pulses.append(record.to_pulse(self.n_atoms))
            except (ValueError, ValidationError) as e:
                lineno = lines[k] if k < len(lines) else None
                raise ParseError('pulse {0}: {1}'.format(k + 1, e), lineno)
        if self.target is None:
            target = ('CPHASE' if self.n_atoms == 2 else 'CCPHASE',
                      math.pi, False)
        else:
            target = (self.target.kind or 'CPHASE',
                      parse_angle(self.target.phase
                                  if self.target.phase is not None
                                  else math.pi),
                      bool(self.target.local))
        return {'name': self.name, 'variant': self.variant or 1,
                'n_atoms': self.n_atoms, 'pulses': tuple(pulses),
                'target': target}

    @classmethod
    def from_sequence(cls, seq):
        """Document for a Sequence-like object."""
        target = TargetRecord(kind=seq.target.kind,
                              phase=float(seq.target.phase),
                              local=bool(seq.target.local_equivalent))
        return cls(name=seq.name, variant=int(seq.variant),
                   n_atoms=int(seq.n_atoms), order=ORDER, target=target,
                   pulses=[PulseRecord.from_pulse(p) for p in seq.pulses])


def _load_pulses(text, items):
    if not isinstance(items, list):
        raise ValueError('pulses must be a list')
    lines = pulse_lines(text)
    records = []
    for k, item in enumerate(items):
        lineno = lines[k] if k < len(lines) else None
        if not isinstance(item, dict):
            raise ParseError('pulse {0} must be an object'.format(k + 1),
                             lineno)
        try:
            records.append(PulseRecord(**item))
        except (ValueError, TypeError) as e:
            raise ParseError('pulse {0}: {1}'.format(k + 1, e), lineno)
    return records


def _key_line(text, key):
    pos = text.find('"{0}"'.format(key))
    return None if pos < 0 else text.count('\n', 0, pos) + 1


def pulse_lines(text):
    """Line number of the opening brace of every pulse object."""
    start = text.find('"pulses"')
    start = text.find('[', start) if start >= 0 else -1
    if start < 0:
        return []
    lines = []
    depth = 0
    in_string = escape = False
    for pos in range(start, len(text)):
        ch = text[pos]
        if in_string:
            if escape:
                escape = False
            elif ch == '\\':
                escape = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch in '[{':
            depth += 1
            if ch == '{' and depth == 2:
                lines.append(text.count('\n', 0, pos) + 1)
        elif ch in ']}':
            depth -= 1
            if depth == 0:
                break
    return lines
