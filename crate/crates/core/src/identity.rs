use rug::Rational;

use crate::exact::rational_to_string;

/// Outcome of one exact identity instance.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl IdentityCheck {
    pub fn new(identity: &'static str, params: Vec<(&'static str, i64)>, lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs == rhs;
        IdentityCheck { identity, params, lhs, rhs, holds }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("identity".into(), self.identity.into());
        for (k, v) in &self.params {
            m.insert((*k).into(), (*v).into());
        }
        m.insert("holds".into(), self.holds.into());
        m.insert("lhs".into(), rational_to_string(&self.lhs).into());
        m.insert("rhs".into(), rational_to_string(&self.rhs).into());
        serde_json::Value::Object(m)
    }
}
