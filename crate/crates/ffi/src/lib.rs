//! C ABI over the `ricf` library.
//!
//! Every function returns a [`RicfStatus`]; on failure a message is available
//! from [`ricf_last_error_message`] on the same thread. Matrices are opaque
//! handles created by [`ricf_matrix_from_dump`] and released with
//! [`ricf_matrix_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ricf::exact::{exact_tail, ToyConfig};
use ricf::ingest::Corpus;
use ricf::measures::{score_measure, Measure};
use ricf::stats::{expected_icf, expected_idf_exact, ThetaCalibrator};
use ricf::{build_matrix, Error, TermDocumentMatrix};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RicfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    EmptyCorpus = 3,
    OutOfRange = 4,
    Domain = 5,
    Infeasible = 6,
    ZeroProbability = 7,
    UnknownMeasure = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

/// Opaque term-document matrix.
pub struct RicfMatrix {
    inner: TermDocumentMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RicfStatus {
    match err {
        Error::EmptyCorpus | Error::NoDocuments(_) => RicfStatus::EmptyCorpus,
        Error::TermOutOfRange { .. } | Error::ZeroCount(_) | Error::KOutOfRange { .. } => {
            RicfStatus::OutOfRange
        }
        Error::Infeasible { .. } => RicfStatus::Infeasible,
        Error::ZeroProbabilityCondition { .. } => RicfStatus::ZeroProbability,
        Error::UnknownMeasure(_) => RicfStatus::UnknownMeasure,
        Error::Domain(_) | Error::NonFinite(_) | Error::InvalidParams(_) => RicfStatus::Domain,
        _ => RicfStatus::Internal,
    }
}

enum Failure {
    Status(RicfStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RicfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RicfStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            RicfStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(RicfStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Status(RicfStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn matrix_arg<'a>(p: *const RicfMatrix) -> Result<&'a TermDocumentMatrix, Failure> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| null("matrix"))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ricf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a matrix from canonical dump text (NUL-terminated UTF-8).
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ricf_matrix_from_dump(
    text: *const c_char,
    out: *mut *mut RicfMatrix,
) -> RicfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let corpus = Corpus::from_dump(text);
        let inner = build_matrix(corpus.documents.iter().map(|d| d.iter().map(String::as_str)))?;
        *out = Box::into_raw(Box::new(RicfMatrix { inner }));
        Ok(())
    })
}

/// Releases a matrix. NULL is ignored.
///
/// # Safety
/// `matrix` must come from [`ricf_matrix_from_dump`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ricf_matrix_free(matrix: *mut RicfMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Vocabulary size `m`, document count `d` and token count `n`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ricf_matrix_sizes(
    matrix: *const RicfMatrix,
    num_terms: *mut usize,
    num_docs: *mut usize,
    total: *mut u64,
) -> RicfStatus {
    guard(|| {
        let m = matrix_arg(matrix)?;
        *out_arg(num_terms, "num_terms")? = m.num_terms();
        *out_arg(num_docs, "num_docs")? = m.num_docs();
        *out_arg(total, "total")? = m.total();
        Ok(())
    })
}

/// Term id of `term`.
///
/// # Safety
/// `term` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ricf_matrix_term_id(
    matrix: *const RicfMatrix,
    term: *const c_char,
    out: *mut usize,
) -> RicfStatus {
    guard(|| {
        let m = matrix_arg(matrix)?;
        let term = str_arg(term, "term")?;
        let id = m.term_id(term).ok_or_else(|| {
            Failure::Status(RicfStatus::OutOfRange, format!("term `{term}` not in vocabulary"))
        })?;
        *out_arg(out, "out")? = id;
        Ok(())
    })
}

/// Copies term `id` as a NUL-terminated string into `buf`. `len_out` receives
/// the string length without the terminator, also when the buffer is too small.
///
/// # Safety
/// `buf` must point to `capacity` writable bytes; `len_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ricf_matrix_term(
    matrix: *const RicfMatrix,
    id: usize,
    buf: *mut c_char,
    capacity: usize,
    len_out: *mut usize,
) -> RicfStatus {
    guard(|| {
        let m = matrix_arg(matrix)?;
        m.check_term(id)?;
        let term = m.term(id).as_bytes();
        *out_arg(len_out, "len_out")? = term.len();
        if capacity <= term.len() {
            return Err(Failure::Status(
                RicfStatus::BufferTooSmall,
                format!("need {} bytes", term.len() + 1),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(term.as_ptr(), buf.cast::<u8>(), term.len());
        *buf.add(term.len()) = 0;
        Ok(())
    })
}

/// Scores every term with `measure` (`chi_sq`, `cg`, `icb`, `dop` or `ricf`),
/// writing `scores[i]` for term id `i`. `len` must equal the vocabulary size.
///
/// # Safety
/// `measure` must be a valid C string and `scores` point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn ricf_score(
    matrix: *const RicfMatrix,
    measure: *const c_char,
    scores: *mut f64,
    len: usize,
) -> RicfStatus {
    guard(|| {
        let m = matrix_arg(matrix)?;
        let measure: Measure = str_arg(measure, "measure")?.parse()?;
        if len != m.num_terms() {
            return Err(Failure::Status(
                RicfStatus::BufferTooSmall,
                format!("scores has length {len}, vocabulary has {}", m.num_terms()),
            ));
        }
        if scores.is_null() {
            return Err(null("scores"));
        }
        let ranking = score_measure(m, measure)?;
        std::slice::from_raw_parts_mut(scores, len).copy_from_slice(ranking.scores());
        Ok(())
    })
}

/// Expected ICF of a term with probability `theta` in `n` tokens.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ricf_expected_icf(theta: f64, n: u64, out: *mut f64) -> RicfStatus {
    guard(|| {
        *out_arg(out, "out")? = expected_icf(theta, n)?;
        Ok(())
    })
}

/// Expected IDF of a term with probability `theta` for the given document sizes.
///
/// # Safety
/// `sizes` must point to `num_docs` values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn ricf_expected_idf(
    theta: f64,
    sizes: *const u64,
    num_docs: usize,
    out: *mut f64,
) -> RicfStatus {
    guard(|| {
        let sizes = slice_arg(sizes, num_docs, "sizes")?;
        *out_arg(out, "out")? = expected_idf_exact(theta, sizes)?;
        Ok(())
    })
}

/// Term probability whose expected IDF on this matrix equals `idf`.
/// `clamped` is set to 1 when no root exists in the bracket.
///
/// # Safety
/// `theta` and `clamped` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ricf_estimate_theta(
    matrix: *const RicfMatrix,
    idf: f64,
    theta: *mut f64,
    clamped: *mut c_int,
) -> RicfStatus {
    guard(|| {
        let m = matrix_arg(matrix)?;
        let est = ThetaCalibrator::from_matrix(m)?.estimate(idf)?;
        *out_arg(theta, "theta")? = est.theta;
        *out_arg(clamped, "clamped")? = c_int::from(est.clamped);
        Ok(())
    })
}

/// Exact `Pr(N >= n_i | B = b_i)` for the focus term of a toy model by full
/// enumeration, refused with `INFEASIBLE` beyond `max_states` matrices.
///
/// # Safety
/// `thetas` must point to `num_terms` values, `sizes` to `num_docs` values,
/// and `out` must be valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn ricf_exact_tail(
    thetas: *const f64,
    num_terms: usize,
    sizes: *const u64,
    num_docs: usize,
    focus: usize,
    n_i: u64,
    b_i: u64,
    max_states: u64,
    out: *mut f64,
) -> RicfStatus {
    guard(|| {
        let thetas = slice_arg(thetas, num_terms, "thetas")?.to_vec();
        let sizes = slice_arg(sizes, num_docs, "sizes")?.to_vec();
        let config = ToyConfig::new(thetas, sizes, focus)?;
        *out_arg(out, "out")? = exact_tail(&config, n_i, b_i, u128::from(max_states))?;
        Ok(())
    })
}
