'''qwitt - cohomology and deformations of the q-deformed Witt superalgebra.
'''

#pylint: disable=unused-import
from . import util
from . import qfield
from . import algebra
from . import cochains
from . import coboundary
from . import linalg
from . import h2solver
from . import reduce
from . import deformation
from . import storage
from . import cli
