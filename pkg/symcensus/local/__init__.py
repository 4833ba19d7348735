from .fields     import (BRUTE_FORCE_LIMIT, Element, FieldKind, LocalFieldDesc,
    LocalFieldError, LocalRing, quadratic_extensions, smallest_nonresidue,
    unit_quotient, UnitQuotient)
from .characters import (char_product_conductor_bound, characters, conductor,
    galois_conjugate, LocalCharacter, norm_compose, norm_group_index,
    quadratic_character, restrict_to_base, sweep_norm_conductor)
