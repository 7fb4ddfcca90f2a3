use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::kernel::Polynomial;

impl Ideal {
    /// `f ∈ N R_m`: some element of `N : f` is a unit at the origin.
    pub fn local_contains(&self, f: &Polynomial) -> Result<bool> {
        if self.contains(f)? {
            return Ok(true);
        }
        // for graded data the colon is graded, hence inside m when proper
        if self.is_homogeneous() && f.is_homogeneous() {
            return Ok(false);
        }
        let c = self.colon_element(f)?;
        Ok(c.generators().iter().any(|g| g.constant_coeff().is_some()))
    }

    /// Every generator of `o` lies in `self R_m`.
    pub fn local_contains_ideal(&self, o: &Ideal) -> Result<bool> {
        self.check(o)?;
        for g in o.generators() {
            if !self.local_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Local membership of several elements. For a zero-dimensional `N`
    /// the contraction is computed once and tested globally.
    pub fn local_contains_each(&self, elems: &[Polynomial]) -> Result<Vec<bool>> {
        let graded = self.is_homogeneous() && elems.iter().all(|f| f.is_homogeneous());
        if !graded && elems.len() > 2 && self.krull_dimension()? == 0 {
            let c = self.local_contraction_zero_dim()?;
            return elems.iter().map(|f| c.contains(f)).collect();
        }
        elems.iter().map(|f| self.local_contains(f)).collect()
    }

    /// `N : m^∞`, the part of a zero-dimensional `N` away from the origin.
    pub fn saturate_origin(&self) -> Result<Ideal> {
        self.saturation(&Ideal::maximal(self.ring()))
    }

    /// `N R_m ∩ R` for zero-dimensional `N`. This is `N + m^k` once
    /// `N + m^k = N + m^(k+1)`.
    pub fn local_contraction_zero_dim(&self) -> Result<Ideal> {
        let d = self.krull_dimension()?;
        if d < 0 {
            return Ok(self.clone());
        }
        if d > 0 {
            return Err(Error::PositiveDimensional(d));
        }
        if self.is_homogeneous() {
            return Ok(self.clone());
        }
        let m = Ideal::maximal(self.ring());
        let mut k = 2;
        loop {
            let next = self.sum(&m.power(k + 1)?)?;
            if next.contains_ideal(&m.power(k)?)? {
                return next.simplified();
            }
            k *= 2;
        }
    }
}
