""" Finite-volume meshes, grid functions and exponentially fitted diffusion operators in one dimension

The operators discretize ``du/dt = (a w (u/w)')'`` with no-flux boundaries. The flux across the face
between the cells `i` and `i+1` is ``F = -K (u_{i+1}/w_{i+1} - u_i/w_i)``, so every multiple of `w` is an
exact discrete steady state and the mass ``sum_i h_i u_i`` is conserved.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.potentials import log_mean
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg
import numpy as np


class Mesh1D(object):
    """ Partition of an interval into cells

    Attributes:
        faces (:obj:`numpy.ndarray`): strictly increasing cell boundaries
        centers (:obj:`numpy.ndarray`): cell midpoints
        widths (:obj:`numpy.ndarray`): cell widths
    """

    def __init__(self, faces):
        """
        Args:
            faces (:obj:`list` of :obj:`float`): strictly increasing cell boundaries

        Raises:
            :obj:`ValueError`: if there are fewer than two faces or they aren't strictly increasing
        """
        faces = np.asarray(faces, dtype=float)
        if faces.ndim != 1 or faces.size < 2:
            raise ValueError('A mesh needs at least two faces')
        if np.any(np.diff(faces) <= 0):
            raise ValueError('Faces must be strictly increasing')
        self.faces = faces
        self.centers = (faces[:-1] + faces[1:]) / 2.
        self.widths = np.diff(faces)

    @classmethod
    def uniform(cls, left, right, n_cells):
        """ Mesh of `n_cells` cells of equal width """
        return cls(np.linspace(left, right, n_cells + 1))

    @classmethod
    def join(cls, *meshes):
        """ Concatenate meshes of adjacent intervals

        Args:
            *meshes (:obj:`Mesh1D`): meshes, ordered from left to right

        Returns:
            :obj:`Mesh1D`: joined mesh

        Raises:
            :obj:`ValueError`: if consecutive meshes don't share an endpoint
        """
        faces = [meshes[0].faces]
        for prev, mesh in zip(meshes[:-1], meshes[1:]):
            if abs(prev.faces[-1] - mesh.faces[0]) > 1e-14 * (1. + abs(mesh.faces[0])):
                raise ValueError('Meshes must be adjacent; {} != {}'.format(prev.faces[-1], mesh.faces[0]))
            faces.append(mesh.faces[1:])
        return cls(np.concatenate(faces))

    @classmethod
    def layered(cls, epsilon, cells_per_side, layer_cells, ratio, left=-1., right=1.):
        """ Mesh of [`left`, `right`] which resolves the layer [0, `epsilon`]

        Cells are uniform on [`left`, 0] and on [`epsilon`, `right`]. Inside the layer the widths grow
        geometrically by `ratio` from both layer edges towards the middle of the layer.

        Args:
            epsilon (:obj:`float`): layer width
            cells_per_side (:obj:`int`): number of cells on each side of the layer
            layer_cells (:obj:`int`): number of cells in the layer
            ratio (:obj:`float`): growth factor of consecutive layer cells, at least 1
            left (:obj:`float`, optional): left end
            right (:obj:`float`, optional): right end

        Returns:
            :obj:`Mesh1D`: mesh with faces at 0 and `epsilon`
        """
        if not left < 0 < epsilon < right:
            raise ValueError('The layer [0, {}] must lie inside ({}, {})'.format(epsilon, left, right))
        if ratio < 1:
            raise ValueError('The grading ratio must be at least 1')

        k = np.arange(layer_cells)
        widths = ratio ** np.minimum(k, layer_cells - 1 - k).astype(float)
        layer_faces = np.concatenate(([0.], epsilon * np.cumsum(widths) / np.sum(widths)))
        layer_faces[-1] = epsilon

        return cls.join(cls.uniform(left, 0., cells_per_side),
                        cls(layer_faces),
                        cls.uniform(epsilon, right, cells_per_side))

    @property
    def size(self):
        """ :obj:`int`: number of cells """
        return self.centers.size

    def cells_in(self, left, right):
        """ Mask of the cells whose centers lie in [`left`, `right`] """
        return (self.centers >= left) & (self.centers <= right)

    def locate(self, x):
        """ Indices of the cells which contain the points `x` """
        i_cell = np.searchsorted(self.faces, np.asarray(x, dtype=float), side='right') - 1
        return np.clip(i_cell, 0, self.size - 1)

    def face_index(self, x):
        """ Index of the face nearest to `x` """
        return int(np.argmin(np.abs(self.faces - x)))

    def mass_matrix(self):
        """ :obj:`scipy.sparse.spmatrix`: diagonal matrix of the cell widths """
        return sparse.diags(self.widths, format='csc')

    def transform(self, fn):
        """ Mesh whose faces are the images of the faces under the increasing map `fn` """
        return Mesh1D(fn(self.faces))


class GridFunction1D(object):
    """ Piecewise-constant function given by its cell averages

    Attributes:
        mesh (:obj:`Mesh1D`): mesh
        values (:obj:`numpy.ndarray`): cell averages
    """

    def __init__(self, mesh, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (mesh.size,):
            raise ValueError('Expected {} cell values, not {}'.format(mesh.size, values.shape))
        self.mesh = mesh
        self.values = values

    @classmethod
    def sample(cls, mesh, fn):
        """ Grid function of the values of `fn` at the cell centers """
        return cls(mesh, fn(mesh.centers))

    def mass(self):
        """ :obj:`float`: integral """
        return float(np.dot(self.mesh.widths, self.values))

    def __call__(self, x):
        return self.values[self.mesh.locate(x)]

    def l1_distance(self, other):
        """ L1 distance to another grid function on the union of both meshes

        Args:
            other (:obj:`GridFunction1D`): grid function on the same interval

        Returns:
            :obj:`float`: distance
        """
        faces = np.union1d(self.mesh.faces, other.mesh.faces)
        mids = (faces[:-1] + faces[1:]) / 2.
        return float(np.dot(np.diff(faces), np.abs(self(mids) - other(mids))))


class GridFunction2D(object):
    """ Piecewise-constant function on a product of two meshes

    Attributes:
        mesh_x (:obj:`Mesh1D`): mesh of the first coordinate
        mesh_y (:obj:`Mesh1D`): mesh of the second coordinate
        values (:obj:`numpy.ndarray`): cell averages, indexed by ``[i_x, i_y]``
    """

    def __init__(self, mesh_x, mesh_y, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (mesh_x.size, mesh_y.size):
            raise ValueError('Expected {} cell values, not {}'.format((mesh_x.size, mesh_y.size), values.shape))
        self.mesh_x = mesh_x
        self.mesh_y = mesh_y
        self.values = values

    def mass(self):
        """ :obj:`float`: integral """
        return float(self.mesh_x.widths @ self.values @ self.mesh_y.widths)

    def band_marginal(self, lower, upper):
        """ Integral over the cells whose second coordinate lies in [`lower`, `upper`[, as a function of the first

        Adjacent bands split the cells without overlap.

        Returns:
            :obj:`GridFunction1D`: marginal
        """
        centers = self.mesh_y.centers
        mask = (centers >= lower) & (centers < upper)
        return GridFunction1D(self.mesh_x, self.values[:, mask] @ self.mesh_y.widths[mask])

    def marginal_x(self):
        """ :obj:`GridFunction1D`: integral over the second coordinate """
        return GridFunction1D(self.mesh_x, self.values @ self.mesh_y.widths)

    def marginal_y(self):
        """ :obj:`GridFunction1D`: integral over the first coordinate """
        return GridFunction1D(self.mesh_y, self.mesh_x.widths @ self.values)


def fitted_transmissivities(mesh, a_cells, w_cells):
    """ Face coefficients of the exponentially fitted fluxes

    Between two cell centers ``K = 1 / ((h_i/(2 a_i) + h_{i+1}/(2 a_{i+1})) L(1/w_i, 1/w_{i+1}))`` with the
    logarithmic mean `L`, which is exact for a mobility constant on each half cell and ``log w`` linear
    between the centers.

    Args:
        mesh (:obj:`Mesh1D`): mesh
        a_cells (:obj:`numpy.ndarray`): positive mobility per cell
        w_cells (:obj:`numpy.ndarray`): positive equilibrium density per cell

    Returns:
        :obj:`numpy.ndarray`: coefficients of the interior faces
    """
    a = np.asarray(a_cells, dtype=float)
    w = np.asarray(w_cells, dtype=float)
    if np.any(a <= 0) or np.any(w <= 0):
        raise ValueError('Mobilities and equilibrium densities must be positive')
    resistance = mesh.widths[:-1] / (2. * a[:-1]) + mesh.widths[1:] / (2. * a[1:])
    return 1. / (resistance * np.atleast_1d(log_mean(1. / w[:-1], 1. / w[1:])))


def face_fluxes(K, u, w):
    """ Fluxes ``-K (u_{i+1}/w_{i+1} - u_i/w_i)`` across the interior faces """
    v = np.asarray(u, dtype=float) / w
    return -np.asarray(K) * np.diff(v)


def diffusion_operator(mesh, K, w):
    """ Sparse matrix `L` with ``d/dt (h u) = L u`` for the fitted fluxes and no-flux boundaries

    The columns of `L` sum to 0 and ``L w = 0``.

    Args:
        mesh (:obj:`Mesh1D`): mesh
        K (:obj:`numpy.ndarray`): coefficients of the interior faces
        w (:obj:`numpy.ndarray`): equilibrium density per cell

    Returns:
        :obj:`scipy.sparse.csc_matrix`: operator
    """
    K = np.asarray(K, dtype=float)
    w = np.asarray(w, dtype=float)
    if K.shape != (mesh.size - 1,):
        raise ValueError('Expected {} face coefficients, not {}'.format(mesh.size - 1, K.shape))
    j = np.arange(mesh.size - 1)
    rows = np.concatenate((j, j, j + 1, j + 1))
    cols = np.concatenate((j + 1, j, j + 1, j))
    data = np.concatenate((K / w[1:], -K / w[:-1], -K / w[1:], K / w[:-1]))
    return sparse.csc_matrix((data, (rows, cols)), shape=(mesh.size, mesh.size))


def implicit_euler_step(mass_matrix, L, u, dt):
    """ Solve ``(M - dt L) u_new = M u``

    Args:
        mass_matrix (:obj:`scipy.sparse.spmatrix`): mass matrix `M`
        L (:obj:`scipy.sparse.spmatrix`): operator
        u (:obj:`numpy.ndarray`): state
        dt (:obj:`float`): time step

    Returns:
        :obj:`numpy.ndarray`: new state
    """
    return sparse_linalg.spsolve(sparse.csc_matrix(mass_matrix - dt * L), mass_matrix @ u)


def implicit_euler_solver(mass_matrix, L, dt):
    """ Factorize ``M - dt L`` once for repeated implicit Euler steps

    Returns:
        :obj:`callable`: function which maps a state to the state one step later
    """
    solve = sparse_linalg.factorized(sparse.csc_matrix(mass_matrix - dt * L))
    return lambda u: solve(mass_matrix @ u)


def flux_integral(mesh, u_dot):
    """ ``I[u_dot](x) = int_left^x u_dot`` at the faces; ``-I`` is the flux which produces `u_dot` """
    return np.concatenate(([0.], np.cumsum(mesh.widths * np.asarray(u_dot, dtype=float))))
