//! Finite abelian coefficient groups as direct products of cyclic groups.

use std::fmt;

use crate::error::HdxError;
use crate::Result;

/// `Z_{m_1} x ... x Z_{m_r}` with `m_i >= 2`. `Z_2` plays the role of F_2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

/// A group element, encoded mixed-radix over the factor moduli.
/// `GroupElement(0)` is always the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub(crate) u64);

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn code(&self) -> u64 {
        self.0
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(HdxError::InvalidGroupSpec(String::new()));
        }
        let mut order: u64 = 1;
        for m in &moduli {
            if *m < 2 {
                return Err(HdxError::InvalidGroupSpec(format!("z{m}")));
            }
            order = order.checked_mul(*m).ok_or_else(|| {
                HdxError::InvalidGroupSpec("group order overflows u64".into())
            })?;
        }
        Ok(FiniteAbelianGroup { moduli, order })
    }

    /// Cyclic group of order `m`.
    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// Parses `"z2"`, `"z3"`, `"z2xz4"`, ...
    pub fn parse(spec: &str) -> Result<Self> {
        let spec_lower = spec.trim().to_ascii_lowercase();
        let mut moduli = Vec::new();
        for part in spec_lower.split('x') {
            let m = part
                .strip_prefix('z')
                .and_then(|rest| rest.parse::<u64>().ok())
                .ok_or_else(|| HdxError::InvalidGroupSpec(spec.to_string()))?;
            if m < 2 {
                return Err(HdxError::InvalidGroupSpec(spec.to_string()));
            }
            moduli.push(m);
        }
        Self::new(moduli)
    }

    /// Canonical spec string, e.g. `"z2xz4"`.
    pub fn spec_string(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn from_residues(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.moduli.len() {
            return Err(HdxError::InvalidGroupSpec(format!(
                "expected {} residues, got {}",
                self.moduli.len(),
                residues.len()
            )));
        }
        let mut code = 0u64;
        let mut base = 1u64;
        for (r, m) in residues.iter().zip(self.moduli.iter()) {
            if r >= m {
                return Err(HdxError::InvalidGroupElement {
                    residue: *r,
                    modulus: *m,
                });
            }
            code += r * base;
            base *= m;
        }
        Ok(GroupElement(code))
    }

    pub fn residues(&self, e: GroupElement) -> Vec<u64> {
        let mut code = e.0;
        self.moduli
            .iter()
            .map(|m| {
                let r = code % m;
                code /= m;
                r
            })
            .collect()
    }

    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let mut code = 0u64;
        let mut base = 1u64;
        let (mut ca, mut cb) = (a.0, b.0);
        for m in &self.moduli {
            let ra = ca % m;
            let rb = cb % m;
            code += ((ra + rb) % m) * base;
            base *= m;
            ca /= m;
            cb /= m;
        }
        GroupElement(code)
    }

    pub fn neg(&self, a: GroupElement) -> GroupElement {
        let mut code = 0u64;
        let mut base = 1u64;
        let mut ca = a.0;
        for m in &self.moduli {
            let ra = ca % m;
            let r = if ra == 0 { 0 } else { m - ra };
            code += r * base;
            base *= m;
            ca /= m;
        }
        GroupElement(code)
    }

    pub fn sub(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.add(a, self.neg(b))
    }

    /// All elements, identity first, in mixed-radix code order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    /// The element with the given code; errors if out of range.
    pub fn element(&self, code: u64) -> Result<GroupElement> {
        if code >= self.order {
            return Err(HdxError::InvalidGroupElement {
                residue: code,
                modulus: self.order,
            });
        }
        Ok(GroupElement(code))
    }

    pub fn format_element(&self, e: GroupElement) -> String {
        let rs = self.residues(e);
        if rs.len() == 1 {
            rs[0].to_string()
        } else {
            format!(
                "({})",
                rs.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}
