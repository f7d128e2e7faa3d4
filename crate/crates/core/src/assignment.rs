use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flavor::Flavor;

macro_rules! string_id {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                $name(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.pad(&self.0)
            }
        }
    };
}

string_id!(EdgeId);
string_id!(NodeId);

/// Flavors on some (or all) edges of a structure. Ordered by edge id, so
/// comparing two total assignments compares their flavors edge by edge.
pub type Assignment = BTreeMap<EdgeId, Flavor>;

/// Parses one `EDGE=FLAVOR` binding.
pub fn parse_binding(s: &str) -> Result<(EdgeId, Flavor)> {
    let (edge, flavor) = s.split_once('=').ok_or_else(|| Error::Parse {
        line: 0,
        column: 0,
        message: format!("expected EDGE=FLAVOR, got {s:?}"),
    })?;
    if edge.is_empty() {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("empty edge id in {s:?}"),
        });
    }
    Ok((EdgeId::from(edge), flavor.parse()?))
}

/// Renders an assignment as `e1=A e2=B`.
pub fn display_assignment(a: &Assignment) -> String {
    a.iter()
        .map(|(e, f)| format!("{e}={f}"))
        .collect::<Vec<_>>()
        .join(" ")
}
