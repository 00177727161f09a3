use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::groups::GroupTable;
use crate::structures::GroupRef;

use super::GowersError;

/// A complex function on the elements of a finite group.
#[derive(Clone, Debug)]
pub struct GroupFunction {
    group: Arc<GroupTable>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: Arc<GroupTable>, values: Vec<Complex64>) -> Result<Self, GowersError> {
        if values.len() != group.order() {
            return Err(GowersError::LengthMismatch { expected: group.order(), found: values.len() });
        }
        if let Some(index) = values.iter().position(|z| !z.is_finite()) {
            return Err(GowersError::NonFinite { index });
        }
        Ok(Self { group, values })
    }

    pub fn from_fn(group: Arc<GroupTable>, f: impl Fn(usize) -> Complex64) -> Result<Self, GowersError> {
        let values = (0..group.order()).map(f).collect();
        Self::new(group, values)
    }

    pub fn constant(group: Arc<GroupTable>, c: Complex64) -> Result<Self, GowersError> {
        Self::from_fn(group, |_| c)
    }

    /// The indicator function of one element.
    pub fn indicator(group: Arc<GroupTable>, element: usize) -> Result<Self, GowersError> {
        group
            .check_element(element)
            .map_err(|_| GowersError::IndexOutOfRange { index: element, max: group.order().saturating_sub(1) })?;
        Self::from_fn(group, |x| if x == element { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    /// Real and imaginary parts drawn uniformly from `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(group: Arc<GroupTable>, rng: &mut R) -> Self {
        let values =
            (0..group.order()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        Self { group, values }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn same_group(&self, other: &GroupFunction) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    pub fn conj(&self) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(Complex64::conj).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|&z| z * c).collect() }
    }

    pub fn add(&self, other: &GroupFunction) -> Result<Self, GowersError> {
        if !self.same_group(other) {
            return Err(GowersError::MismatchedGroups);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group.clone(), values })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Reads a function file; a relative group path resolves against the
    /// file's directory. Returns the function and every file read.
    pub fn load(path: &Path) -> Result<(Self, Vec<PathBuf>), GowersError> {
        let text = std::fs::read_to_string(path).map_err(|e| GowersError::Io(format!("{}: {e}", path.display())))?;
        let file: FunctionFile = serde_json::from_str(&text).map_err(|e| GowersError::Format(e.to_string()))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let (f, mut inputs) = file.build(base)?;
        inputs.insert(0, path.to_path_buf());
        Ok((f, inputs))
    }

    pub fn to_file(&self, group: GroupRef) -> FunctionFile {
        FunctionFile { group, values: self.values.iter().map(|z| [z.re, z.im]).collect() }
    }
}

/// `{"group": <path or inline table>, "values": [[re, im], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionFile {
    pub group: GroupRef,
    pub values: Vec<[f64; 2]>,
}

impl FunctionFile {
    pub fn build(&self, base_dir: &Path) -> Result<(GroupFunction, Vec<PathBuf>), GowersError> {
        let mut inputs = Vec::new();
        let group = match &self.group {
            GroupRef::Inline(t) => t.clone(),
            GroupRef::Path(p) => {
                let path = base_dir.join(p);
                let text =
                    std::fs::read_to_string(&path).map_err(|e| GowersError::Io(format!("{}: {e}", path.display())))?;
                inputs.push(path);
                GroupTable::from_json(&text).map_err(|e| GowersError::Format(e.to_string()))?
            }
        };
        let values = self.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Ok((GroupFunction::new(Arc::new(group), values)?, inputs))
    }
}

fn check_dim(n: usize) -> Result<(), GowersError> {
    if n >= 32 {
        return Err(GowersError::InvalidParameter(format!("dimension {n} is too large")));
    }
    Ok(())
}

/// One function per vertex of `{0,1}^n`, all on the same group.
#[derive(Clone, Debug)]
pub struct FunctionSystem {
    n: usize,
    functions: Vec<GroupFunction>,
}

impl FunctionSystem {
    pub fn new(n: usize, functions: Vec<GroupFunction>) -> Result<Self, GowersError> {
        check_dim(n)?;
        if functions.len() != 1 << n {
            return Err(GowersError::LengthMismatch { expected: 1 << n, found: functions.len() });
        }
        if functions.iter().any(|f| !f.same_group(&functions[0])) {
            return Err(GowersError::MismatchedGroups);
        }
        Ok(Self { n, functions })
    }

    /// `[f]_n`: every vertex carries `f`.
    pub fn uniform(f: &GroupFunction, n: usize) -> Result<Self, GowersError> {
        check_dim(n)?;
        Self::new(n, vec![f.clone(); 1 << n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &GroupTable {
        self.functions[0].group()
    }

    pub fn functions(&self) -> &[GroupFunction] {
        &self.functions
    }

    /// The function at vertex `v` (bit `i - 1` is coordinate `i`).
    pub fn at(&self, v: usize) -> &GroupFunction {
        &self.functions[v]
    }

    /// `Q_{d,r}`: vertex `v` receives the function at `v` with coordinate
    /// `d` set to `r`.
    pub fn face_operator(&self, d: usize, r: u8) -> Result<Self, GowersError> {
        if d == 0 || d > self.n {
            return Err(GowersError::IndexOutOfRange { index: d, max: self.n });
        }
        if r > 1 {
            return Err(GowersError::InvalidParameter(format!("side must be 0 or 1, got {r}")));
        }
        let bit = 1usize << (d - 1);
        let functions = (0..self.functions.len())
            .map(|v| self.functions[if r == 0 { v & !bit } else { v | bit }].clone())
            .collect();
        Ok(Self { n: self.n, functions })
    }
}
