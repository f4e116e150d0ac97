use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use ncproj_core::free::{parse_poly, parse_presentation, FreePoly, Presentation};
use ncproj_core::groebner::{AlgebraRef, GradedAlgebra};
use ncproj_core::module::{parse_module_spec, regular_module, GradedModule, ModuleSpec};
use ncproj_core::morphism::{morphism_headers, parse_morphism, AlgebraMorphism};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: String, message: String },
    Core { context: String, error: ncproj_core::Error },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{}", s.trim_end()),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Core { context, error } if context.is_empty() => write!(f, "{error}"),
            CliError::Core { context, error } => write!(f, "{context}: {error}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ncproj_core::Error> for CliError {
    fn from(error: ncproj_core::Error) -> Self {
        CliError::Core {
            context: String::new(),
            error,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn within(context: impl fmt::Display) -> impl FnOnce(ncproj_core::Error) -> CliError {
    let context = context.to_string();
    move |error| CliError::Core { context, error }
}

/// File access relative to a base directory. Algebras are cached per (file, bound), so a
/// file named twice yields the same algebra object.
pub struct Ctx {
    base: PathBuf,
    algebras: RefCell<HashMap<(PathBuf, i64), AlgebraRef>>,
}

impl Ctx {
    pub fn new(base: &Path) -> Self {
        Ctx {
            base: base.to_path_buf(),
            algebras: RefCell::new(HashMap::new()),
        }
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    fn read(&self, p: &Path) -> Result<String> {
        std::fs::read_to_string(self.resolve(p)).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn presentation(&self, p: &Path) -> Result<Presentation> {
        parse_presentation(&self.read(p)?).map_err(within(p.display()))
    }

    pub fn algebra(&self, p: &Path, d: i64) -> Result<AlgebraRef> {
        let key = (self.resolve(p), d);
        if let Some(a) = self.algebras.borrow().get(&key) {
            return Ok(a.clone());
        }
        let a = GradedAlgebra::new(&self.presentation(p)?, d).map_err(within(p.display()))?;
        self.algebras.borrow_mut().insert(key, a.clone());
        Ok(a)
    }

    /// A morphism file; `source`/`target` headers are relative to the file itself.
    pub fn morphism(&self, p: &Path, d: i64) -> Result<AlgebraMorphism> {
        let text = self.read(p)?;
        let (src, tgt) = morphism_headers(&text);
        let missing = |h: &str| CliError::Usage(format!("{}: missing `{h}` header", p.display()));
        let dir = p.parent().unwrap_or(Path::new(""));
        let source = self.algebra(&dir.join(src.ok_or_else(|| missing("source"))?), d)?;
        let target = self.algebra(&dir.join(tgt.ok_or_else(|| missing("target"))?), d)?;
        parse_morphism(&text, &source, &target).map_err(within(p.display()))
    }

    /// Module spec given as a file name or as inline text (`gen g 0; rel g*x`).
    pub fn module_spec(&self, arg: &str, a: &AlgebraRef) -> Result<ModuleSpec> {
        let path = Path::new(arg);
        let text = if !arg.contains(';') && !arg.contains('\n') && self.resolve(path).is_file() {
            self.read(path)?
        } else {
            arg.to_string()
        };
        parse_module_spec(&text, a).map_err(within(format!("module `{}`", arg.trim())))
    }

    /// The module named by `arg`, or `A` itself; computed up to its lowest generator plus
    /// the algebra bound.
    pub fn module(&self, arg: Option<&str>, a: &AlgebraRef) -> Result<GradedModule> {
        match arg {
            Some(arg) => {
                let spec = self.module_spec(arg, a)?;
                Ok(spec.build(a, spec.default_hi(a.bound()))?)
            }
            None => Ok(regular_module(a, a.bound())?),
        }
    }
}

pub fn poly(a: &AlgebraRef, text: &str) -> Result<FreePoly> {
    parse_poly(a.presentation(), text).map_err(within(format!("`{text}`")))
}

/// `x -> poly`.
pub fn assignment(a: &AlgebraRef, text: &str) -> Result<(u16, FreePoly)> {
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| CliError::Usage(format!("expected `<generator> -> <polynomial>`, got `{text}`")))?;
    let name = lhs.trim();
    let x = a
        .presentation()
        .index_of(name)
        .ok_or_else(|| CliError::from(ncproj_core::Error::UnknownGenerator(name.into())))?;
    Ok((x, poly(a, rhs)?))
}
