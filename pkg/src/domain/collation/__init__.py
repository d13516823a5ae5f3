from .entity import GAP, Collation, LetterCollation
from .parser import dump_collation, load_collation
from .recoding import as_letter_collation, places_of_variation, recode_letters

__all__ = [
    "GAP",
    "Collation",
    "LetterCollation",
    "as_letter_collation",
    "dump_collation",
    "load_collation",
    "places_of_variation",
    "recode_letters",
]
