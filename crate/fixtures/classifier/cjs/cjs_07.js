var cache = {};
exports.get = function(k) {
  return cache[k];
};
exports.set = function(k, v) {
  cache[k] = v;
};
