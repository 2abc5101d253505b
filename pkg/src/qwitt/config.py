'''Configuration for qwitt'''

# Diagnostics go to stderr so that reports on stdout stay byte-identical.
STYLE = {
    'fg': 'green',
    'err': True
}

DETAIL = {
    'fg': 'green',
    'bold': True,
    'err': True
}

WARNING = {
    'fg': 'yellow',
    'bold': True,
    'err': True
}

ERROR = {
    'fg': 'red',
    'bold': True,
    'err': True
}

BORING = {
    'fg': 'white',
    'err': True
}

DEFAULTS = {
    'parity': 'both',
    's_min': -4,
    's_max': 4,
    'window': 12,
    'core': None,
    'mode': 'auto',
    'q': None,
    'seed': 0,
    'format': 'json',
    'jobs': 1,
    'coefficients': 'integer',
    'samples': 50,
}

# Largest window that `auto` mode still solves symbolically.
SYMBOLIC_LIMIT = 6

# Indices between the core and the window edge.
CORE_MARGIN = 6

DEFAULT_Q = '2'
