from .abelian      import (FiniteAbelianGroup, GroupCharacter, GroupError,
    smith_normal_form)
from .certificates import Certificate, ConductorBoundViolation, InvariantViolation
from .config       import Config, ConfigError, load_config
from .local        import LocalCharacter, LocalFieldDesc, LocalFieldError
from .dirichlet    import adelize, DirichletCharacter
from .weil_deligne import (ParameterError, PrincipalSeries, Special,
    Supercuspidal, sym_conductor, sym_decompose)
from .modforms     import dim_cusp, dim_new
from .cm           import class_group, cm_count, FieldError
from .census       import census, CensusRow, weight_mu
from .emit         import emit
