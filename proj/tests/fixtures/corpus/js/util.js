// Counter factory and a clamp helper.
function makeCounter(start) {
  let count = start;
  function next() {
    count += 1;
    return count;
  }
  return next;
}

function clamp(v, lo, hi) {
  if (v < lo) {
    return lo;
  }
  return v > hi ? hi : v;
}

module.exports = { makeCounter, clamp };
