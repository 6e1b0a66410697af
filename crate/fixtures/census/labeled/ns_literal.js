module.exports = {
  size: 3,
  area: function(w, h) {
    return w * h;
  }
};
