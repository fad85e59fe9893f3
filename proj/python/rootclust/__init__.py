"""Root clustering for univariate polynomials over a region of interest."""

try:
    from ._rootclust import *  # noqa: F401,F403  (installed layout)
    from ._rootclust import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension on sys.path directly
    from _rootclust import *  # noqa: F401,F403
    from _rootclust import __version__  # noqa: F401
