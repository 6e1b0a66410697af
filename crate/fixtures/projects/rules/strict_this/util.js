exports.twice = function(x) {
  return 2 * x;
};
