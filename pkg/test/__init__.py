from .abelian      import *
from .certificates import *
from .local        import *
from .dirichlet    import *
from .weil_deligne import *
from .modforms     import *
from .cm           import *
from .census       import *
from .emit         import *
from .config       import *
from .cli          import *
