use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::free::parse::{parse_poly_tokens, statements};
use crate::free::{FreePoly, Presentation};
use crate::groebner::AlgebraRef;
use crate::linalg::{Matrix, Scalar};

/// Graded ring map `A → B` given by generator images. Degree `e` of `A` lands in degree
/// `scale·e` of `B`; `scale = 1` except for Veronese inclusions.
pub struct AlgebraMorphism {
    source: AlgebraRef,
    target: AlgebraRef,
    images: Vec<FreePoly>,
    scale: i64,
    matrices: Vec<OnceLock<Matrix>>,
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraMorphism(scale {}; {})", self.scale, self.to_string().trim_end())
    }
}

impl Clone for AlgebraMorphism {
    fn clone(&self) -> Self {
        AlgebraMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            scale: self.scale,
            matrices: self.matrices.clone(),
        }
    }
}

impl AlgebraMorphism {
    pub fn new(source: AlgebraRef, target: AlgebraRef, images: Vec<FreePoly>, scale: i64) -> Result<Self> {
        let sp = source.presentation();
        if images.len() != sp.num_generators() {
            return Err(Error::DimensionMismatch {
                expected: sp.num_generators(),
                found: images.len(),
            });
        }
        if scale < 1 {
            return Err(Error::InvalidArgument(format!("degree scale {scale} must be positive")));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        let mut normal = Vec::with_capacity(images.len());
        for (x, img) in images.iter().enumerate() {
            let want = scale * sp.weights()[x] as i64;
            if !img.is_zero() && img.degree() != Some(want) {
                return Err(Error::NotAMorphism(format!(
                    "image of `{}` must be homogeneous of degree {want}",
                    sp.names()[x]
                )));
            }
            normal.push(target.normal_form(img)?);
        }
        let top = (source.bound()).min(target.bound() / scale);
        let m = AlgebraMorphism {
            source,
            target,
            images: normal,
            scale,
            matrices: (0..=top.max(0)).map(|_| OnceLock::new()).collect(),
        };
        for r in m.source.presentation().relations() {
            let d = r.degree().expect("homogeneous");
            if d * scale > m.target.bound() {
                continue;
            }
            if !m.map_poly(r)?.is_zero() {
                return Err(Error::NotAMorphism(m.source.presentation().display_poly(r)));
            }
        }
        Ok(m)
    }

    pub fn identity(a: &AlgebraRef) -> Self {
        let p = a.presentation();
        let images = (0..p.num_generators() as u16).map(|x| p.generator_poly(x)).collect();
        Self::new(a.clone(), a.clone(), images, 1).expect("identity is a morphism")
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn images(&self) -> &[FreePoly] {
        &self.images
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Largest source degree whose image is certified in the target.
    pub fn top(&self) -> i64 {
        self.source.bound().min(self.target.bound() / self.scale)
    }

    /// Image of a source polynomial, reduced in the target.
    pub fn map_poly(&self, f: &FreePoly) -> Result<FreePoly> {
        let mut out = FreePoly::zero(self.target.field());
        for (w, c) in f.terms() {
            let mut prod = FreePoly::one(self.target.field());
            for &l in w.letters() {
                prod = prod.mul(&self.images[l as usize])?;
            }
            out = out.add(&prod.scale(c))?;
        }
        self.target.normal_form(&out)
    }

    /// `A_e → B_{scale·e}` in normal-word coordinates.
    pub fn matrix(&self, e: i64) -> Result<&Matrix> {
        if e < 0 || e > self.top() {
            return Err(Error::DegreeAboveBound {
                degree: e,
                bound: self.top(),
            });
        }
        if let Some(m) = self.matrices[e as usize].get() {
            return Ok(m);
        }
        let basis = self.source.basis(e)?;
        let mut rows = Vec::with_capacity(basis.len());
        for w in basis {
            rows.push(self.word_image(w.letters())?);
        }
        let m = Matrix::from_rows(self.target.field(), self.target.dim(self.scale * e)?, rows)?;
        Ok(self.matrices[e as usize].get_or_init(|| m))
    }

    fn word_image(&self, letters: &[u16]) -> Result<Vec<Scalar>> {
        let Some((&last, prefix)) = letters.split_last() else {
            return Ok(vec![self.target.field().one()]);
        };
        let pw = self.source.presentation().word(prefix);
        let d = pw.degree();
        // the prefix of a normal word is normal
        let row = match self.source.index_of(&pw) {
            Some(i) => self.matrix(d)?.row(i).to_vec(),
            None => self.target.coords(self.scale * d, &self.map_poly(&FreePoly::word(self.source.field(), pw))?)?,
        };
        let w = self.scale * self.source.weight(last);
        let img = &self.images[last as usize];
        Ok(self
            .target
            .right_mul_poly(self.scale * d, img, w)?
            .left_apply(&row))
    }

    pub fn map_coords(&self, e: i64, v: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.matrix(e)?.left_apply(v))
    }

    pub fn compose(&self, after: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let images = self
            .images
            .iter()
            .map(|img| after.map_poly(img))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::new(self.source.clone(), after.target.clone(), images, self.scale * after.scale)
    }
}

impl fmt::Display for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = self.source.presentation();
        if self.scale != 1 {
            writeln!(f, "scale {}", self.scale)?;
        }
        for (name, img) in sp.names().iter().zip(&self.images) {
            writeln!(f, "map {name} -> {}", self.target.display(img))?;
        }
        Ok(())
    }
}

/// `source <path>` / `target <path>` header lines of a morphism file.
pub fn morphism_headers(text: &str) -> (Option<String>, Option<String>) {
    let mut source = None;
    let mut target = None;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix("source ") {
            source = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("target ") {
            target = Some(rest.trim().to_string());
        }
    }
    (source, target)
}

/// Parses `map <gen> -> <poly>` statements (plus optional `scale <n>`); header lines are
/// skipped. Unmapped generators go to zero.
pub fn parse_morphism(text: &str, source: &AlgebraRef, target: &AlgebraRef) -> Result<AlgebraMorphism> {
    let body: String = text
        .lines()
        .map(|l| {
            let t = l.trim_start();
            if t.starts_with("source ") || t.starts_with("target ") {
                ""
            } else {
                l
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let sp: &Presentation = source.presentation();
    let tp: &Presentation = target.presentation();
    let mut images: Vec<Option<FreePoly>> = vec![None; sp.num_generators()];
    let mut scale = None;
    for st in statements(&body)? {
        match st.keyword() {
            Some("map") => {
                let name = st.ident(1, "a source generator")?;
                let x = sp.index_of(&name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let arrow = matches!(
                    (st.tokens.get(2).map(|t| &t.tok), st.tokens.get(3).map(|t| &t.tok)),
                    (Some(crate::free::parse::Tok::Sym('-')), Some(crate::free::parse::Tok::Sym('>')))
                );
                if !arrow {
                    return Err(st.error_at(2, "expected `->`"));
                }
                images[x as usize] = Some(parse_poly_tokens(&st, 4, tp.field(), tp)?);
            }
            Some("scale") => {
                let s = st.int(1, "a positive integer")?;
                st.expect_end(st.int_end(1))?;
                scale = Some(i64::try_from(&s).map_err(|_| st.error_at(1, "scale out of range"))?);
            }
            _ => return Err(st.error_at(0, "expected `map`, `scale`, `source` or `target`")),
        }
    }
    let scale = scale.unwrap_or_else(|| {
        sp.weights()
            .iter()
            .zip(&images)
            .find_map(|(&w, img)| img.as_ref().and_then(|p| p.degree()).map(|d| d / w as i64))
            .unwrap_or(1)
            .max(1)
    });
    let images = images
        .into_iter()
        .map(|i| i.unwrap_or_else(|| FreePoly::zero(tp.field())))
        .collect();
    AlgebraMorphism::new(source.clone(), target.clone(), images, scale)
}
