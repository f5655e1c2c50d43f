//! URL canonicalisation used when comparing shared links.

/// Lowercases scheme and host, drops a trailing `/` from the path and keeps
/// the query string and fragment untouched.
///
/// Strings without a `scheme://` separator are only trimmed.
pub fn normalize_url(raw: &str) -> String {
    let raw = raw.trim();
    let Some(sep) = raw.find("://") else {
        return raw.to_string();
    };
    let (scheme, rest) = (&raw[..sep], &raw[sep + 3..]);
    let host_end = rest.find(['/', '?', '#']).unwrap_or(rest.len());
    let (host, tail) = rest.split_at(host_end);
    let path_end = tail.find(['?', '#']).unwrap_or(tail.len());
    let (path, suffix) = tail.split_at(path_end);
    let path = path.trim_end_matches('/');

    let mut out = String::with_capacity(raw.len());
    out.push_str(&scheme.to_ascii_lowercase());
    out.push_str("://");
    out.push_str(&host.to_ascii_lowercase());
    out.push_str(path);
    out.push_str(suffix);
    out
}
