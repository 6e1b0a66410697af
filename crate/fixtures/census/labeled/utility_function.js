function format(s) {
  return '[' + s + ']';
}
format.pad = function(s, n) {
  while (s.length < n) {
    s = ' ' + s;
  }
  return s;
};
module.exports = format;
