//! Holds the `acceptance` test target, which runs every cross-check of
//! [`xychain::verify`] at full size. It lives in its own package so that a
//! failing criterion does not stop the other suites of a workspace test run.
