exports.upper = function(s) {
  return s.toUpperCase();
};
exports.lower = function(s) {
  return s.toLowerCase();
};
