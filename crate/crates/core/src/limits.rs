/// Size limits shared by every method.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    /// Largest field size `q^r` that may be enumerated (and tabulated).
    pub enumeration: u64,
    /// Largest `k` for which the dense `k x k` rank computation runs.
    pub rank: u64,
    /// Largest `#P_l(a,b) = q^(l-2)` for the odd-prime decomposition.
    pub ell: u64,
    /// Largest `(q-1)^2 q^(r/2)` accepted by the floating-point character sum.
    pub precision_budget: f64,
}

impl Limits {
    pub const DEFAULT_ENUMERATION: u64 = 2_000_000;
    pub const DEFAULT_RANK: u64 = 400;
    pub const DEFAULT_ELL: u64 = 2197;
    pub const DEFAULT_PRECISION_BUDGET: f64 = 35_184_372_088_832.0; // 2^45

    pub fn with_enumeration(mut self, cap: u64) -> Self {
        self.enumeration = cap;
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: Self::DEFAULT_ENUMERATION,
            rank: Self::DEFAULT_RANK,
            ell: Self::DEFAULT_ELL,
            precision_budget: Self::DEFAULT_PRECISION_BUDGET,
        }
    }
}
