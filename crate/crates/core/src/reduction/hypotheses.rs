use serde::Serialize;

use crate::error::Result;
use crate::ideal::Ideal;
use crate::reduction::analytic_spread;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    MPrimary,
    Equimultiple,
    #[serde(rename = "G_ell-verified")]
    GEllVerified,
    HypothesesUnverified,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::MPrimary => "m-primary",
            Classification::Equimultiple => "equimultiple",
            Classification::GEllVerified => "G_ell-verified",
            Classification::HypothesesUnverified => "hypotheses-unverified",
        }
    }
}

/// Outcome of the Fitting-height test for `G_s`.
#[derive(Clone, Debug, Serialize)]
pub struct GsReport {
    pub s: usize,
    pub satisfied: bool,
    /// `(i, ht Fitt_i(I))` for every index tested.
    pub fitting_heights: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub ell: usize,
    pub height: i64,
    pub height_in_quotient: bool,
    pub g_ell: GsReport,
    pub classification: Classification,
    pub warnings: Vec<String>,
}

impl HypothesisReport {
    /// The `G_ell` test failed, so the core formulas are not guaranteed.
    pub fn violated(&self) -> bool {
        !self.g_ell.satisfied
    }
}

/// `G_s` via `ht Fitt_i(I) >= i + 1` for `ht I <= i <= s - 1`.
pub fn check_g_s(i: &Ideal, s: usize) -> Result<GsReport> {
    let ht = i.height()?;
    let mut heights = Vec::new();
    let mut satisfied = true;
    let start = ht.max(0) as usize;
    for k in start..s {
        let h = i.fitting_ideal(k)?.height()?;
        heights.push((k, h));
        if h < k as i64 + 1 {
            satisfied = false;
        }
    }
    Ok(GsReport {
        s,
        satisfied,
        fitting_heights: heights,
    })
}

pub fn classify_hypotheses(i: &Ideal) -> Result<HypothesisReport> {
    let ell = analytic_spread(i)?;
    let height = i.height()?;
    let g_ell = check_g_s(i, ell)?;
    let classification = if i.is_m_primary()? {
        Classification::MPrimary
    } else if height == ell as i64 {
        Classification::Equimultiple
    } else if g_ell.satisfied {
        Classification::GEllVerified
    } else {
        Classification::HypothesesUnverified
    };
    let mut warnings = vec![
        "residual S2 conditions are assumed, not verified".to_string(),
    ];
    let quotient = i.ring().is_quotient();
    if quotient {
        warnings.push(
            "heights in a quotient ring are computed as dim R - dim R/I, which assumes R is equidimensional and catenary"
                .to_string(),
        );
    }
    if !g_ell.satisfied {
        warnings.push(format!(
            "I does not satisfy G_{ell}; core formulas may fail and results are not certified"
        ));
    }
    if let crate::kernel::FieldMode::Prime(p) = i.ring().field() {
        warnings.push(format!(
            "working over F_{p}: results are Monte Carlo evidence only"
        ));
    }
    Ok(HypothesisReport {
        ell,
        height,
        height_in_quotient: quotient,
        g_ell,
        classification,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Ring;

    #[test]
    fn maximal_ideal_is_g2() {
        let r = Ring::rational(&["U", "V"]);
        let rep = check_g_s(&Ideal::maximal(&r), 2).unwrap();
        assert!(rep.satisfied);
        // the range starts at ht I = 2, so nothing is tested
        assert!(rep.fitting_heights.is_empty());
        // (UV, UW): ht 1, and Fitt_1 = (V, W) has height 2
        let r3 = Ring::rational(&["U", "V", "W"]);
        let rep = check_g_s(&Ideal::parse(&r3, &["U*V", "U*W"]).unwrap(), 2).unwrap();
        assert!(rep.satisfied);
        assert_eq!(rep.fitting_heights, vec![(1, 2)]);
    }

    #[test]
    fn classifications() {
        let r = Ring::rational(&["U", "V"]);
        let rep = classify_hypotheses(&Ideal::parse(&r, &["U^2", "U*V", "V^3"]).unwrap()).unwrap();
        assert_eq!(rep.classification, Classification::MPrimary);
        let rep = classify_hypotheses(&Ideal::parse(&r, &["U*V"]).unwrap()).unwrap();
        assert_eq!(rep.classification, Classification::Equimultiple);
        assert!(rep.warnings[0].contains("residual S2"));
    }

    #[test]
    fn example_411_violates_g1() {
        let r = Ring::rational(&["U", "V", "W"]);
        let q = r
            .with_quotient(&[r.parse("U^2 + V^2").unwrap(), r.parse("V*W").unwrap()])
            .unwrap();
        let rep = classify_hypotheses(&Ideal::parse(&q, &["U", "V"]).unwrap()).unwrap();
        assert_eq!(rep.ell, 1);
        assert_eq!(rep.height, 0);
        assert!(!rep.g_ell.satisfied);
        assert!(rep.violated());
        assert_eq!(rep.classification, Classification::HypothesesUnverified);
    }
}
