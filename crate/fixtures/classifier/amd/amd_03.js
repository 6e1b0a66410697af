define({
  primary: '#336699',
  secondary: '#cccccc'
});
