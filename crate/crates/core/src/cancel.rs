//! Cooperative cancellation for long symbolic computations.
//!
//! A [`CancelToken`] is installed for the duration of a closure with
//! [`with_cancel`]; Groebner basis loops poll it and return
//! [`Error::Cancelled`] once it is set. The token is scoped to the calling
//! thread.

use std::cell::RefCell;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

thread_local! {
    static CURRENT: RefCell<Vec<CancelToken>> = const { RefCell::new(Vec::new()) };
}

/// Runs `f` with `token` observable by [`check`].
pub fn with_cancel<T>(token: &CancelToken, f: impl FnOnce() -> T) -> T {
    CURRENT.with(|c| c.borrow_mut().push(token.clone()));
    let out = f();
    CURRENT.with(|c| {
        c.borrow_mut().pop();
    });
    out
}

pub(crate) fn check() -> Result<()> {
    CURRENT.with(|c| {
        if c.borrow().iter().any(|t| t.is_cancelled()) {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    })
}
