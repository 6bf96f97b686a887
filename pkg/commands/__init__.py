from .family_logic import register_family_command
from .eval_logic import register_eval_command
from .modulus_logic import register_modulus_command
from .orbit_logic import register_orbit_command
from .classify_logic import register_classify_command
from .lemmas_logic import register_lemmas_command
from .verify51_logic import register_verify51_command
from .escape_logic import register_escape_command

__all__ = [
    'register_family_command',
    'register_eval_command',
    'register_modulus_command',
    'register_orbit_command',
    'register_classify_command',
    'register_lemmas_command',
    'register_verify51_command',
    'register_escape_command'
]
