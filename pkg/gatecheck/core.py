# -*- coding: utf-8 -*-
"""

Core: grammar descriptors, keyed registries and the gatecheck exceptions

"""
import json


def _assert_is_type(name, value, value_type):
    """Assert that a value must be a given type."""
    if not isinstance(value, value_type):
        if type(value_type) is tuple:
            types = ', '.join(t.__name__ for t in value_type)
            raise ValueError('{0} must be one of ({1})'.format(name, types))
        else:
            raise ValueError('{0} must be {1}'
                             .format(name, value_type.__name__))


class ValidationError(Exception):
    """Exception raised when a grammar document fails validation

    Raised by the ``validate`` methods of :class:`GrammarClass` subclasses
    and by :class:`KeyedList` on duplicate or mismatched keys."""
    pass


class ParseError(ValidationError):
    """A sequence document could not be read

    ``lineno`` is the 1-based line of the offending record, or None when
    the position is unknown."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = 'line {0}: {1}'.format(lineno, message)
        super(ParseError, self).__init__(message)
        self.lineno = lineno


class UnsupportedError(ValueError):
    """Atom count or error-model combination outside the modelled range"""
    pass


class ConvergenceError(RuntimeError):
    """An iterative solve ended without meeting its tolerance

    ``best`` holds the best point found and ``residuals`` its residuals, so
    callers can report or restart from them."""

    def __init__(self, message, best=None, residuals=None):
        super(ConvergenceError, self).__init__(message)
        self.best = best
        self.residuals = residuals


class FitError(ValueError):
    """Series fit rejected by the conditioning guard"""
    pass


class RobustnessError(ValueError):
    """A construction misses a robustness property it is built to have"""
    pass


class KeyedList(list):
    """A list that can optionally be indexed by the ``name`` attribute of
    its elements"""
    def __init__(self, attr_name='name', *args, **kwargs):
        self.attr_name = attr_name
        list.__init__(self, *args, **kwargs)

    def get_keys(self):
        keys = [getattr(x, self.attr_name) for x in self]
        if len(keys) != len(set(keys)):
            raise ValidationError('duplicate keys found')
        return keys

    def __getitem__(self, key):
        if isinstance(key, str):
            keys = self.get_keys()
            if key not in keys:
                raise KeyError(' "{0}" is an invalid key'.format(key))
            return self[keys.index(key)]
        return list.__getitem__(self, key)

    def __contains__(self, key):
        if isinstance(key, str):
            return key in self.get_keys()
        return list.__contains__(self, key)

    def __setitem__(self, key, value):
        if isinstance(key, str):
            if not hasattr(value, self.attr_name):
                raise ValidationError(
                    'object must have ' + self.attr_name + ' attribute')
            elif getattr(value, self.attr_name) != key:
                raise ValidationError(
                    "key must be equal to '" + self.attr_name +
                    "' attribute")

            keys = self.get_keys()
            if key not in keys:
                self.append(value)
            else:
                list.__setitem__(self, keys.index(key), value)
        else:
            list.__setitem__(self, key, value)


def grammar(grammar_type=None, grammar_name=None):
    """Decorator to define properties that map to the ``grammar`` dict.

    The ``grammar`` dict is the canonical in-memory form of a sequence
    document; serializing it gives the on-disk JSON.

    Parameters
    ----------
    grammar_type : type or tuple of types, default None
        If the value assigned to the property is not one of these types a
        ValueError is raised. No type checking is done if None.
    grammar_name : string, default None
        Key used in the ``grammar`` dict. Defaults to the name of the
        decorated function; useful when the document field is not a valid
        Python identifier.

    The decorated function is a validator: it takes the candidate value
    only (no ``self``), raises ValueError if the value is not acceptable,
    and returns nothing. The property docstring is the validator's.
    """
    def grammar_creator(validator, name):
        def setter(self, value):
            if isinstance(grammar_type, (type, tuple)):
                _assert_is_type(validator.__name__, value, grammar_type)
            validator(value)
            self.grammar[name] = value

        def getter(self):
            return self.grammar.get(name, None)

        def deleter(self):
            if name in self.grammar:
                del self.grammar[name]

        return property(getter, setter, deleter, validator.__doc__)

    if isinstance(grammar_type, (type, tuple)):
        def grammar_dec(validator):
            return grammar_creator(validator, grammar_name or
                                   validator.__name__)
        return grammar_dec
    elif isinstance(grammar_name, str):
        def grammar_dec(validator):
            return grammar_creator(validator, grammar_name)
        return grammar_dec
    else:
        # Bare @grammar: grammar_type is the decorated validator itself.
        return grammar_creator(grammar_type, grammar_type.__name__)


def _encoder(obj):
    if hasattr(obj, 'grammar'):
        return obj.grammar
    raise TypeError('{0} is not JSON serializable'.format(type(obj).__name__))


class GrammarDict(dict):
    """Document contents. Calling the dict returns a plain Python structure
    ready for ``json``; ``str`` gives the compact JSON text."""

    def __call__(self):
        return json.loads(json.dumps(self, default=_encoder))

    def __str__(self):
        return json.dumps(self, default=_encoder)


class GrammarClass(object):
    """Base class for objects backed by an internal ``grammar`` dict.

    Subclasses declare their document fields with :func:`grammar`; the
    ``grammar`` dict then holds exactly what gets written to disk.
    """
    def __init__(self, **kwargs):
        """Initialize a GrammarClass

        **kwargs are field-value pairs set on initialization. Unknown
        fields raise ``ValueError``.
        """
        self.grammar = GrammarDict()

        for attr, value in kwargs.items():
            if hasattr(self, attr):
                setattr(self, attr, value)
            else:
                raise ValueError('unknown keyword argument ' + attr)

    def validate(self):
        """Validate the contents of the object.

        Re-assigns every stored field through its property setter and
        re-raises any ``ValueError`` as :class:`ValidationError`.
        """
        for key, val in list(self.grammar.items()):
            try:
                setattr(self, key, val)
            except ValueError as e:
                raise ValidationError('invalid contents: ' + str(e))

    def to_json(self, path=None, validate=False, pretty_print=True):
        """Convert object to JSON

        Parameters
        ----------
        path : string, default None
            File to write. If None, the JSON text is returned instead.
        validate : boolean, default False
            If True, call ``validate`` before serializing.
        pretty_print : boolean, default True
            Indent the output for reading.

        Returns
        -------
        string or None
            JSON text when no path is given.
        """
        if validate:
            self.validate()

        if pretty_print:
            dumps_args = {'indent': 2, 'separators': (',', ': ')}
        else:
            dumps_args = {}

        if path:
            with open(path, 'w') as f:
                json.dump(self.grammar, f, default=_encoder, **dumps_args)
                f.write('\n')
        else:
            return json.dumps(self.grammar, default=_encoder, **dumps_args)
