module.exports = function(a) {
  return a * 2;
};
