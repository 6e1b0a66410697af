var trim = function(s) {
  return s.replace(/^\s+|\s+$/g, '');
};
module.exports = trim;
