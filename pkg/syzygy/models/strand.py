from dataclasses import dataclass

from syzygy.models.matrix import FpMatrix


@dataclass(frozen=True, eq=False)
class KoszulStrand:
    """
    The piece wedge^{p+1} V (x) M_{q-1} -> wedge^p V (x) M_q -> wedge^{p-1} V (x) M_{q+1}
    of the Koszul complex. d_out is d_{p,q}, d_in is d_{p+1,q-1}.
    """

    p: int
    q: int
    d_out: FpMatrix
    d_in: FpMatrix

    @property
    def middle_dim(self) -> int:
        return self.d_out.cols

    def is_complex(self) -> bool:
        """d_out * d_in == 0"""
        if self.d_out.cols == 0 or self.d_in.cols == 0 or self.d_out.rows == 0:
            return True
        return self.d_out.matmul(self.d_in).is_zero()
